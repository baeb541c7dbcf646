#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace adhoc {

using NodeId = std::int32_t;

/// A source/destination pair that cannot be connected by the available links.
class UnreachablePairError : public std::runtime_error {
public:
    UnreachablePairError(NodeId from, NodeId to)
        : std::runtime_error("unreachable pair: " + std::to_string(from) + " -> " +
                             std::to_string(to)),
          from_(from),
          to_(to) {}

    NodeId from() const { return from_; }
    NodeId to() const { return to_; }

private:
    NodeId from_;
    NodeId to_;
};

/// Critical-rate search could not establish a subcritical/supercritical bracket.
class BracketFailureError : public std::runtime_error {
public:
    explicit BracketFailureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adhoc
