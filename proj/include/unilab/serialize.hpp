#pragma once

#include <json.hpp>
#include <string>

#include "unilab/analysis.hpp"
#include "unilab/chain.hpp"
#include "unilab/fitness.hpp"
#include "unilab/montecarlo.hpp"

namespace unilab {

using nlohmann::json;

json to_json(const UnitationFitness& f);
json to_json(const SteppingStoneProfile& p);
json to_json(const OptRateResult& r);
json to_json(const ConvergenceReport& r);
json to_json(const TrajectoryStats& s);
json to_json(const LemmaCheck& c);
json to_json(const RuntimeCurve<double>& c);
json to_json(const RuntimeCurve<Rational>& c);

/// Row-major transition probabilities; rational entries as fraction
/// strings, float entries as numbers.
json chain_debug_json(const EAChain<Rational>& chain);
json chain_debug_json(const EAChain<double>& chain);

/// Locale-independent decimal formatting (shortest round-trip form).
std::string format_double(double v);

std::string curve_csv(const RuntimeCurve<double>& c);
std::string curve_csv(const RuntimeCurve<Rational>& c);
std::string convergence_csv(const ConvergenceReport& r);
std::string lemma_csv(const std::vector<LemmaCheck>& checks);
std::string fitness_table_csv(const UnitationFitness& f);

}  // namespace unilab
