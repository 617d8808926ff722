// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vecoder {

enum class ErrorKind {
  Domain,
  DivergentMoment,
  DivisionByZero,
  NoBracket,
  TooFewPoints,
  UnsupportedKind,
  MaxIterations,
  BadBracket,
  SingularChannel,
  BudgetExceeded,
  NumericalFailure,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Base class of every exception thrown by the library. The kind tag lets
/// callers (the CLI, the sweep driver) branch without a cascade of catch blocks.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define VECODER_DECLARE_ERROR(Name, Kind)                              \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

VECODER_DECLARE_ERROR(DomainError, Domain)
VECODER_DECLARE_ERROR(DivergentMoment, DivergentMoment)
VECODER_DECLARE_ERROR(DivisionByZero, DivisionByZero)
VECODER_DECLARE_ERROR(NoBracket, NoBracket)
VECODER_DECLARE_ERROR(TooFewPoints, TooFewPoints)
VECODER_DECLARE_ERROR(UnsupportedKind, UnsupportedKind)
VECODER_DECLARE_ERROR(MaxIterations, MaxIterations)
VECODER_DECLARE_ERROR(BadBracket, BadBracket)
VECODER_DECLARE_ERROR(SingularChannel, SingularChannel)
VECODER_DECLARE_ERROR(BudgetExceeded, BudgetExceeded)
VECODER_DECLARE_ERROR(NumericalFailure, NumericalFailure)
VECODER_DECLARE_ERROR(InvalidArgument, InvalidArgument)
VECODER_DECLARE_ERROR(IoError, Io)

#undef VECODER_DECLARE_ERROR

}  // namespace vecoder
