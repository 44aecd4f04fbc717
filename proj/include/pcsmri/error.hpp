#pragma once

#include <stdexcept>
#include <string>

namespace pcsmri {

// Base of every exception thrown by the library. The CLI maps the concrete
// type onto its exit-code contract.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Operand shapes disagree, or a dimension is zero.
class ShapeError : public Error
{
public:
  using Error::Error;
};

// Parameter outside its documented range.
class ConfigError : public Error
{
public:
  using Error::Error;
};

// The acquisition cannot support the requested operation (no sampled lines,
// ACS block not fully sampled, ...).
class ProtocolError : public Error
{
public:
  using Error::Error;
};

class EstimationError : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

// A solver iterate stopped being finite.
class DivergenceError : public Error
{
public:
  using Error::Error;
};

// External denoiser exited nonzero, timed out or returned malformed data.
class ExternalPriorError : public Error
{
public:
  using Error::Error;
};

} // namespace pcsmri
