#pragma once

#include <stdexcept>
#include <string>

namespace compositedp {

// All library failures derive from Error so callers can catch one type.
// The category string is stable and machine-checkable.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string &what)
        : std::runtime_error(category + ": " + what), category_(std::move(category)) {}

    const std::string &category() const { return category_; }

private:
    std::string category_;
};

struct InvalidParams : Error {
    using Error::Error;
};

struct NonPositiveEpsilon : InvalidParams {
    explicit NonPositiveEpsilon(const std::string &w) : InvalidParams("NonPositiveEpsilon", w) {}
};

struct NonPositiveSensitivity : InvalidParams {
    explicit NonPositiveSensitivity(const std::string &w) : InvalidParams("NonPositiveSensitivity", w) {}
};

struct DeltaOutOfRange : InvalidParams {
    explicit DeltaOutOfRange(const std::string &w) : InvalidParams("DeltaOutOfRange", w) {}
};

struct DegenerateInputRange : Error {
    explicit DegenerateInputRange(const std::string &w) : Error("DegenerateInputRange", w) {}
};

struct OutOfBounds : Error {
    explicit OutOfBounds(const std::string &w) : Error("OutOfBounds", w) {}
};

// Carries which hyper-parameter constraint made a shape infeasible.
struct Infeasible : Error {
    enum class Constraint { Normalization, HeightCap, DpRatio, EdgeBelowBase, NonPositiveBase, ActivationWidth };

    Infeasible(Constraint c, const std::string &w) : Error("Infeasible", w), constraint(c) {}

    Constraint constraint;
};

struct CpOutOfRange : Error {
    explicit CpOutOfRange(const std::string &w) : Error("CpOutOfRange", w) {}
};

struct ZeroActivationMass : Error {
    explicit ZeroActivationMass(const std::string &w) : Error("ZeroActivationMass", w) {}
};

struct CertificationFailed : Error {
    CertificationFailed(const std::string &w, double sup_point, double inf_point)
        : Error("CertificationFailed", w), witness_sup(sup_point), witness_inf(inf_point) {}

    double witness_sup;
    double witness_inf;
};

struct NumericNonconvergence : Error {
    explicit NumericNonconvergence(const std::string &w) : Error("NumericNonconvergence", w) {}
};

struct InfeasibleRegion : Error {
    explicit InfeasibleRegion(const std::string &w) : Error("InfeasibleRegion", w) {}
};

struct TargetUnreachable : Error {
    explicit TargetUnreachable(const std::string &w) : Error("TargetUnreachable", w) {}
};

struct MissingDelta : Error {
    explicit MissingDelta(const std::string &w) : Error("MissingDelta", w) {}
};

struct FileNotFound : Error {
    explicit FileNotFound(const std::string &w) : Error("FileNotFound", w) {}
};

struct ColumnMissing : Error {
    explicit ColumnMissing(const std::string &w) : Error("ColumnMissing", w) {}
};

struct NoNumericRows : Error {
    explicit NoNumericRows(const std::string &w) : Error("NoNumericRows", w) {}
};

struct EmptySeries : Error {
    explicit EmptySeries(const std::string &w) : Error("EmptySeries", w) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string &w) : Error("ConfigError", w) {}
};

} // namespace compositedp
