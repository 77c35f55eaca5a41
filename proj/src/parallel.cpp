#include "cytovisc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cytovisc {

std::size_t default_thread_count() {
    if (char const* env = std::getenv(kThreadsEnvVar)) {
        try {
            long const v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (...) {
            // fall through to hardware concurrency
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace detail {
bool& inside_parallel_region() noexcept {
    thread_local bool flag = false;
    return flag;
}
}  // namespace detail

}  // namespace cytovisc
