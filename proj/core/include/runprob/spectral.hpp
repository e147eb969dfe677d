#pragma once

#include "runprob/method_result.hpp"
#include "runprob/query.hpp"
#include "runprob/roots.hpp"

namespace runprob::numeric {

/// z_n = Re sum_k rho_k / x_k^{n+1}. Refuses NearMultiple decompositions with
/// IllConditionedError; fall back to z_recurrence or z_matrix_power there.
MethodResult z_spectral(const RunQuery& query, const SpectralDecomposition& decomposition);

/// One-term estimate rho_1 / x_1^{n+1} from the dominant pole (smallest-modulus
/// root with nonzero residue). error_bound = r * max_{k>=2} |rho_k| / |x_2|^{n+1}.
/// Throws IllConditionedError as above and DominanceError when the dominant
/// pole is not real, positive, > 1, or not isolated by at least 1e-9 in modulus.
MethodResult z_asymptotic(const RunQuery& query, const SpectralDecomposition& decomposition);

} // namespace runprob::numeric
