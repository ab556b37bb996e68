#pragma once

#include <stdexcept>
#include <string>

namespace netcorr {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid user input: files, labels, preconditions on data.
/// The CLI maps this to exit code 1; everything else to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Raised by double_edge_swap when no acceptable swap exists within the
/// retry budget. configuration_null catches this and keeps the observed
/// graph for that replicate (a complete graph cannot be rewired at all).
class NotRewireableError : public Error {
public:
    using Error::Error;
};

/// A wiki page does not exist (red link) or was deleted.
class PageNotFoundError : public Error {
public:
    using Error::Error;
};

/// A fetch was required while the client is in offline mode.
class OfflineError : public Error {
public:
    using Error::Error;
};

} // namespace netcorr
