#include "cytovisc/rng.hpp"

namespace cytovisc {

std::string_view generator_description() noexcept {
#if defined(_LIBCPP_VERSION)
    return "mt19937_64 engine; std::normal_distribution (libc++, Box-Muller polar); "
           "seeds via splitmix64 chain";
#elif defined(__GLIBCXX__)
    return "mt19937_64 engine; std::normal_distribution (libstdc++, Marsaglia polar); "
           "seeds via splitmix64 chain";
#else
    return "mt19937_64 engine; std::normal_distribution (unknown standard library); "
           "seeds via splitmix64 chain";
#endif
}

}  // namespace cytovisc
