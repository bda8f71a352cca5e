// Copyright 2026 The ife Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file error.hpp
/// @brief Exception hierarchy shared by every ife module.
///
/// Validation never throws: problems found in a byte stream are reported as
/// findings (see validator.hpp). Exceptions are reserved for contract
/// violations by the caller and for operations that cannot produce a result.

#ifndef IFE_ERROR_HPP
#define IFE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ife {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Buffer access outside [0, size).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Tile coordinate or index outside the pyramid.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition (reservation size mismatch,
/// unset offsets, undersized entry stride, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Offset arithmetic would exceed the representable range.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// The byte source cannot be opened as a container at all.
class OpenError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class CodecError : public Error {
 public:
  using Error::Error;
};

/// No codec is registered for the requested encoding format.
class CodecUnavailableError : public CodecError {
 public:
  using CodecError::CodecError;
};

/// Recovery found nothing it could rebuild a slide from.
class UnrecoverableError : public Error {
 public:
  using Error::Error;
};

}  // namespace ife

#endif  // IFE_ERROR_HPP
