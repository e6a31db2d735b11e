#pragma once

#include <optional>

#include "fundens/rng.hpp"
#include "fundens/typecheck.hpp"
#include "fundens/value.hpp"

namespace fundens {

/// Extracts the 1 or 2 real parameters of a family from its argument value.
/// Throws TypeError on arity mismatch.
void unpack_params(Dist d, const Value& params, double out[2]);

/// Valid-parameter predicate: bias in [0,1]; rate > 0; stdev > 0;
/// a,b > 0; shape,scale > 0; lo < hi. Non-finite parameters are invalid.
bool dist_validate(Dist d, const double* p);
bool validate(Dist d, const Value& params);

/// Density with respect to the stock measure of the result type (a mass
/// function for Bernoulli and Poisson). Invalid parameters yield 0.0: drawing
/// with them fails, and fail has zero density.
double dist_pdf(Dist d, const double* p, const Value& x);
double pdf(Dist d, const Value& params, const Value& x);

/// log pdf in a closed form (no exp-then-log round trips); -inf iff pdf = 0.
double dist_log_pdf(Dist d, const double* p, const Value& x);
double log_pdf(Dist d, const Value& params, const Value& x);

/// One draw, or nullopt when the parameters are invalid (the semantics of
/// fail).
std::optional<Value> dist_sample(Dist d, const double* p, RngStream& rng);
std::optional<Value> sample_dist(Dist d, const Value& params, RngStream& rng);

}  // namespace fundens
