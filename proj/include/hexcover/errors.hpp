#pragma once

#include <stdexcept>
#include <string>

namespace hexcover {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input polygon violates a geometric precondition (too few vertices,
// zero area, not convex, ...).
struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& what) : Error(what) {}
};

// Self-intersecting polygon passed where a simple one is required.
struct NotSimple : Error {
    explicit NotSimple(const std::string& what) : Error(what) {}
};

// Collinear overlapping segments have no single intersection point.
struct NoUniquePoint : Error {
    explicit NoUniquePoint(const std::string& what) : Error(what) {}
};

struct UnsupportedPhase : Error {
    explicit UnsupportedPhase(const std::string& what) : Error(what) {}
};

// The joint search would enumerate more surface triples than the
// configured cap allows.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

// Covering centers are not expressed in the same frame as the region.
struct FrameMismatch : Error {
    explicit FrameMismatch(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace hexcover
