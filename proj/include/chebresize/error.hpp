// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace chebresize {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested computation would not fit in memory or overflow index arithmetic.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Decoding or encoding an image file failed.
class ImageIoError : public Error {
public:
    using Error::Error;
};

}  // namespace chebresize
