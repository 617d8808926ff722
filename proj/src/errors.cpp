// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include "vecoder/errors.hpp"

namespace vecoder {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::DivergentMoment: return "DivergentMoment";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
    case ErrorKind::MaxIterations: return "MaxIterations";
    case ErrorKind::BadBracket: return "BadBracket";
    case ErrorKind::SingularChannel: return "SingularChannel";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

}  // namespace vecoder
