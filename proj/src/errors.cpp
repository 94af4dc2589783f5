#include "scatterlab/errors.hpp"

#include <cstdlib>
#include <sstream>

namespace scatterlab {

double guard_scale()
{
    const char* env = std::getenv("SCATTERLAB_GUARD_SCALE");
    if (env == nullptr || *env == '\0') return 1.0;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || !(v > 0.0)) return 1.0;
    return v;
}

void check_guard(double size, double limit, const std::string& what)
{
    if (size > limit * guard_scale()) {
        std::ostringstream os;
        os << what << ": size " << size << " exceeds guard " << limit * guard_scale();
        throw GuardError(os.str());
    }
}

}  // namespace scatterlab
