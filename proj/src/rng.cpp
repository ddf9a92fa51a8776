#include "intravol/rng.hpp"

#include "intravol/numeric.hpp"

namespace intravol {

double RandomStream::normal() {
    return normal_quantile(uniform());
}

} // namespace intravol
