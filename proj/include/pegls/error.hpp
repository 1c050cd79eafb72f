#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pegls {

/// Broad class of a failure; the CLI maps these onto exit codes.
enum class ErrorCategory { config, data, numeric };

/**
 * @brief Base of every error raised by the library.
 *
 * `name()` is the stable identifier printed by the CLI (e.g. "UnbalancedPanel"),
 * `what()` carries the context.
 */
class Error : public std::runtime_error {
public:
    Error(std::string name, ErrorCategory category, const std::string& message)
        : std::runtime_error(message), name_(std::move(name)), category_(category) {}

    const std::string& name() const noexcept { return name_; }
    ErrorCategory category() const noexcept { return category_; }

private:
    std::string name_;
    ErrorCategory category_;
};

#define PEGLS_DEFINE_ERROR(Type, Category)                                     \
    class Type : public Error {                                                \
    public:                                                                    \
        explicit Type(const std::string& message)                              \
            : Error(#Type, ErrorCategory::Category, message) {}                \
    };

// data
PEGLS_DEFINE_ERROR(UnbalancedPanel, data)
PEGLS_DEFINE_ERROR(DuplicateObservation, data)
PEGLS_DEFINE_ERROR(DataFileError, data)

// config
PEGLS_DEFINE_ERROR(ConfigError, config)
PEGLS_DEFINE_ERROR(UnknownVariable, config)
PEGLS_DEFINE_ERROR(InvalidWindow, config)
PEGLS_DEFINE_ERROR(InvalidModel, config)

// numeric
PEGLS_DEFINE_ERROR(Collinear, numeric)
PEGLS_DEFINE_ERROR(InsufficientObservations, numeric)
PEGLS_DEFINE_ERROR(PerfectFit, numeric)
PEGLS_DEFINE_ERROR(DegenerateSample, numeric)
PEGLS_DEFINE_ERROR(DomainError, numeric)
PEGLS_DEFINE_ERROR(UnsupportedSampleSize, numeric)
PEGLS_DEFINE_ERROR(SingularPeriodCovariance, numeric)
PEGLS_DEFINE_ERROR(DegenerateResiduals, numeric)
PEGLS_DEFINE_ERROR(DegenerateVariable, numeric)

#undef PEGLS_DEFINE_ERROR

} // namespace pegls
