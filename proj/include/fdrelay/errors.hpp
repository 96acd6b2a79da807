// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace fdrelay {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed argument: wrong size, non-finite entry, negative power, ...
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Water-filling over a set of gains with no positive entry.
class NoFeasibleStreams : public Error {
public:
    using Error::Error;
};

/// Covariance matrix with an eigenvalue below -1e-9.
class InvalidCovariance : public Error {
public:
    using Error::Error;
};

/// Problem size outside what an exhaustive search can handle.
class UnsupportedSize : public Error {
public:
    using Error::Error;
};

/// The FD-vs-HD bracket handed to the threshold search does not contain a crossing.
class NoCrossing : public Error {
public:
    NoCrossing(double t_lo, double fd_lo, double t_hi, double fd_hi, double hd)
        : Error("no FD/HD crossing in [" + std::to_string(t_lo) + ", " + std::to_string(t_hi) +
                "]: mean FD rate " + std::to_string(fd_lo) + " -> " + std::to_string(fd_hi) +
                ", mean HD rate " + std::to_string(hd)),
          t_lo(t_lo), fd_lo(fd_lo), t_hi(t_hi), fd_hi(fd_hi), hd(hd) {}

    double t_lo;
    double fd_lo;
    double t_hi;
    double fd_hi;
    double hd;
};

} // namespace fdrelay
