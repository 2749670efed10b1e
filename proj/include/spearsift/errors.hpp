#pragma once

#include <stdexcept>
#include <string>

namespace spearsift {

// Base class for every failure this library reports.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// corpus
struct ParseError : Error { using Error::Error; };
struct MissingSender : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct EmptyCorpus : Error { using Error::Error; };

// attack forging
struct SameSender : Error { using Error::Error; };
struct NoDomainPeer : Error { using Error::Error; };
struct SameRecipient : Error { using Error::Error; };
struct MissingRecipient : Error { using Error::Error; };
struct InsufficientCorpus : Error { using Error::Error; };

// vectorization
struct EmptySubset : Error { using Error::Error; };

// knn
struct LengthMismatch : Error { using Error::Error; };
struct KTooLarge : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// feature selection
struct ExhaustedActions : Error { using Error::Error; };
struct EmptyResult : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };

// evaluation
struct EmptyCounts : Error { using Error::Error; };
struct DegenerateClass : Error { using Error::Error; };
struct DegenerateData : Error { using Error::Error; };

// persistence
struct ArtifactMismatch : Error { using Error::Error; };

}  // namespace spearsift
