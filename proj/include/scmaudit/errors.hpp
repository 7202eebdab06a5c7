#ifndef SCMAUDIT_ERRORS_HPP
#define SCMAUDIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scmaudit {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SCMAUDIT_DEFINE_ERROR(NAME)                                   \
    struct NAME : Error {                                             \
        explicit NAME(const std::string& msg)                         \
            : Error(std::string(#NAME) + ": " + msg) {}               \
    }

// corpus
SCMAUDIT_DEFINE_ERROR(UnknownAttributeValue);
SCMAUDIT_DEFINE_ERROR(DuplicateImageId);
SCMAUDIT_DEFINE_ERROR(MissingCounterpart);
SCMAUDIT_DEFINE_ERROR(UnreadableImage);

// embedder
SCMAUDIT_DEFINE_ERROR(BackendUnavailable);
SCMAUDIT_DEFINE_ERROR(DimensionMismatch);
SCMAUDIT_DEFINE_ERROR(EmptyText);

// scm
SCMAUDIT_DEFINE_ERROR(CollinearBasis);
SCMAUDIT_DEFINE_ERROR(EmptyWordSet);
SCMAUDIT_DEFINE_ERROR(DegenerateBasis);

// sentiment
SCMAUDIT_DEFINE_ERROR(ScorerUnavailable);

// collector
SCMAUDIT_DEFINE_ERROR(EndpointError);
SCMAUDIT_DEFINE_ERROR(EmptyResponse);
SCMAUDIT_DEFINE_ERROR(ImageUnreadable);

// analysis
SCMAUDIT_DEFINE_ERROR(UnknownLevel);
SCMAUDIT_DEFINE_ERROR(IncompleteGrid);
SCMAUDIT_DEFINE_ERROR(DegenerateVariance);
SCMAUDIT_DEFINE_ERROR(LengthMismatch);
SCMAUDIT_DEFINE_ERROR(TooFewPairs);
SCMAUDIT_DEFINE_ERROR(MissingScores);

// pmi
SCMAUDIT_DEFINE_ERROR(ZeroCount);

// pipeline
SCMAUDIT_DEFINE_ERROR(ConfigError);
SCMAUDIT_DEFINE_ERROR(PipelineError);

#undef SCMAUDIT_DEFINE_ERROR

}  // namespace scmaudit

#endif  // SCMAUDIT_ERRORS_HPP
