#pragma once

#include <stdexcept>

namespace gossipsim {

/// Base class for all gossipsim errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParams : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// graph
struct ZeroVolume : Error { using Error::Error; };
struct OverlappingSets : Error { using Error::Error; };
struct TooLargeForExact : Error { using Error::Error; };

// engine
struct AsymmetricClosure : Error { using Error::Error; };

// protocols
struct IterationCapExceeded : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct ScheduleGraphMismatch : Error { using Error::Error; };

// spanner
struct IncompleteRun : Error { using Error::Error; };
struct NotSubgraph : Error { using Error::Error; };
struct UncertifiedSpanner : Error { using Error::Error; };

// simulate
struct RoundCapExceeded : Error { using Error::Error; };

}  // namespace gossipsim
