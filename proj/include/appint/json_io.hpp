#ifndef APPINT_JSON_IO_HPP
#define APPINT_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "appint/appint.hpp"
#include "appint/laurent.hpp"
#include "appint/spectra.hpp"

namespace appint {

using Json = nlohmann::ordered_json;

Json laurent_to_json(const LaurentPolynomial& p);
LaurentPolynomial laurent_from_json(const Json& j);

Json spectrum_to_json(const SpectrumSpec& s);
SpectrumSpec spectrum_from_json(const Json& j);

Json selection_to_json(const InterpolatorySelection& sel);
InterpolatorySelection selection_from_json(const Json& j);

/// Full provenance of a conversion run; parseable back for replay.
Json sequence_to_json(const InterpolatorySequence& seq);
InterpolatorySequence sequence_from_json(const Json& j);

/// Deterministic dump: keys in insertion order, floating-point numbers
/// rendered with 17 significant digits.
std::string dump_deterministic(const Json& j, int indent = 2);

/// Shortest round-trip decimal form (CSV output).
std::string format_shortest(double x);

} // namespace appint

#endif
