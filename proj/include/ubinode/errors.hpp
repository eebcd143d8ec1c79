#pragma once

#include <stdexcept>
#include <string>

namespace ubinode {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Catalog construction: empty list, duplicate name, empty-string name.
class CatalogError : public Error {
public:
    using Error::Error;
};

// Feature vector construction/decoding: wrong length, non-binary content.
class VectorError : public Error {
public:
    using Error::Error;
};

// Grant validation: unknown feature, incomplete partition, overlap.
class GrantError : public Error {
public:
    using Error::Error;
};

// Event delivered to the wrong collector or the wrong window.
class CollectError : public Error {
public:
    enum class Kind { NodeMismatch, LateEvent, FutureEvent };

    CollectError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Agent state-machine violations (detect before provisioning, etc).
class StateError : public Error {
public:
    using Error::Error;
};

// Topology construction and adjacency violations.
class TopologyError : public Error {
public:
    using Error::Error;
};

// Simulation configuration out of range.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Scenario loading. Category tells parse errors, dangling references and
// invariant violations apart without string matching.
class ScenarioError : public Error {
public:
    enum class Category { Parse, UnresolvedReference, InvariantViolation };

    ScenarioError(Category category, const std::string& what)
        : Error(what), category_(category) {}
    Category category() const noexcept { return category_; }

private:
    Category category_;
};

// Report export: unknown format, unwritable destination.
class ReportError : public Error {
public:
    using Error::Error;
};

// API misuse, e.g. raising an alarm from a Normal verdict.
class ContractError : public Error {
public:
    using Error::Error;
};

}  // namespace ubinode
