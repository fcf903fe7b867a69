// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bellsim {

enum class ErrorKind {
    Normalization,
    QubitIndex,
    Projection,
    Observable,
    Dimension,
    Size,
    NonCliffordGate,
    Config,
    Model,
    Input,
    Parse,
    Io,
};

inline const char *to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Normalization: return "NormalizationError";
    case ErrorKind::QubitIndex: return "QubitIndexError";
    case ErrorKind::Projection: return "ProjectionError";
    case ErrorKind::Observable: return "ObservableError";
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::Size: return "SizeError";
    case ErrorKind::NonCliffordGate: return "NonCliffordGate";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Model: return "ModelError";
    case ErrorKind::Input: return "InputError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

#define BELLSIM_DEFINE_ERROR(Name, Kind)                                       \
    class Name : public Error {                                                \
      public:                                                                  \
        explicit Name(const std::string &what) : Error(ErrorKind::Kind, what) {} \
    }

BELLSIM_DEFINE_ERROR(NormalizationError, Normalization);
BELLSIM_DEFINE_ERROR(QubitIndexError, QubitIndex);
BELLSIM_DEFINE_ERROR(ProjectionError, Projection);
BELLSIM_DEFINE_ERROR(ObservableError, Observable);
BELLSIM_DEFINE_ERROR(DimensionError, Dimension);
BELLSIM_DEFINE_ERROR(SizeError, Size);
BELLSIM_DEFINE_ERROR(ConfigError, Config);
BELLSIM_DEFINE_ERROR(ModelError, Model);
BELLSIM_DEFINE_ERROR(InputError, Input);
BELLSIM_DEFINE_ERROR(IoError, Io);

#undef BELLSIM_DEFINE_ERROR

/// Raised when a gate or input state falls outside the Clifford/stabilizer
/// world. `witnesses` carries the offending source locations when the request
/// came from a parsed circuit.
class NonCliffordGate : public Error {
  public:
    struct Location {
        std::size_t line = 0;
        std::size_t column = 0;
    };

    explicit NonCliffordGate(const std::string &what,
                             std::vector<Location> witnesses = {})
        : Error(ErrorKind::NonCliffordGate, what),
          witnesses_(std::move(witnesses)) {}

    [[nodiscard]] const std::vector<Location> &witnesses() const noexcept {
        return witnesses_;
    }

  private:
    std::vector<Location> witnesses_;
};

} // namespace bellsim
