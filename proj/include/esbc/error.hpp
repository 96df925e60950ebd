#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace esbc {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error("syntax error at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownAtom : public Error {
 public:
  explicit UnknownAtom(std::string name)
      : Error("unknown atom '" + name + "'"), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class DuplicateStateId : public Error {
 public:
  explicit DuplicateStateId(std::string id)
      : Error("duplicate state id '" + id + "'"), id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class EmptySpace : public Error {
 public:
  EmptySpace() : Error("an epistemic space needs at least one state") {}
};

class UnknownState : public Error {
 public:
  explicit UnknownState(std::string id)
      : Error("unknown state '" + id + "'"), id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class KindMismatch : public Error {
 public:
  using Error::Error;
};

// A construction needs a state whose beliefs have a model set no state of
// the space carries. `state`/`input` name the cell that needs it.
class MissingState : public Error {
 public:
  MissingState(std::size_t state, std::uint32_t input, std::uint32_t required,
               const std::string& what)
      : Error(what), state_(state), input_(input), required_(required) {}

  std::size_t state() const noexcept { return state_; }
  std::uint32_t input_bits() const noexcept { return input_; }
  std::uint32_t required_bits() const noexcept { return required_; }

 private:
  std::size_t state_;
  std::uint32_t input_;
  std::uint32_t required_;
};

class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(std::uint64_t nodes)
      : Error("search budget exhausted after " + std::to_string(nodes) + " nodes"),
        nodes_(nodes) {}

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::uint64_t nodes_;
};

}  // namespace esbc
