#pragma once

// Syntax-directed typechecker for the four judgement forms.  Inference uses
// the inversion principles of the rules; the two conversion rules are decided
// by bounded normalize-and-compare on terms.

#include <stdexcept>
#include <string>

#include "phoml/reduction.hpp"
#include "phoml/syntax.hpp"

namespace phoml {

enum class TypeErrorKind {
  UnboundVariable,
  KindMismatch,
  NotAnImplication,
  NotAnArrow,
  NotOmegaEquation,
  EndpointMismatch,
  NotConvertible,
  ContextIllFormed,
  FuelExhausted,
  TriLamShapeError,
};

std::string to_string(TypeErrorKind kind);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, std::string path, std::string detail);

  TypeErrorKind kind() const { return kind_; }
  const std::string& path() const { return path_; }
  const std::string& detail() const { return detail_; }

  // "ERROR <kind> at <path>: <detail>"
  std::string render() const;

 private:
  TypeErrorKind kind_;
  std::string path_;
  std::string detail_;
};

struct CheckOptions {
  int fuel = kDefaultFuel;  // conversion / normalization budget
};

// Validates declarations left to right; failures are wrapped as
// ContextIllFormed.
void check_context(const Context& ctx, const CheckOptions& options = {});

// The subject must be locally closed; its free variables are looked up in the
// context, which callers have validated beforehand.
Type infer_type(const Context& ctx, const Term& term, const CheckOptions& options = {});
Term infer_prop(const Context& ctx, const Proof& proof, const CheckOptions& options = {});
Equation infer_equation(const Context& ctx, const Path& path,
                        const CheckOptions& options = {});

// Checking mode: conversion-aware comparison against a stated classifier.
// check_path handles triple-lambdas bidirectionally, checking the body against
// the instantiated expected equation.
void check_proof(const Context& ctx, const Proof& proof, const Term& prop,
                 const CheckOptions& options = {});
void check_path(const Context& ctx, const Path& path, const Equation& eq,
                const CheckOptions& options = {});

void check_judgement(const Judgement& judgement, const CheckOptions& options = {});

}  // namespace phoml
