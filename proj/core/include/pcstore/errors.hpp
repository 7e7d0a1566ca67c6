#pragma once

#include <stdexcept>
#include <string>

namespace pcstore {

/// Parameters outside the domain of an operation (negative rates, zero block size, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Steady-state metrics requested for a queue with arrival_rate >= service_rate.
class SaturatedQueue : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Base for cluster-model mutations that cannot be carried out.
class ClusterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateId : public ClusterError {
public:
    using ClusterError::ClusterError;
};

class UnknownId : public ClusterError {
public:
    using ClusterError::ClusterError;
};

/// No registered node has room for a block (or the file as a whole).
class PlacementError : public ClusterError {
public:
    using ClusterError::ClusterError;
};

/// Scenario or state document failed to parse or validate. The message carries
/// the offending field path and, for syntax errors, the line and column.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pcstore
