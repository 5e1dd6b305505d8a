#include "nullgeo/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace nullgeo {

int worker_count()
{
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* cap = std::getenv("NULLGEO_THREADS")) {
        try {
            const int limit = std::stoi(cap);
            if (limit >= 1) {
                n = std::min(n, limit);
            }
        } catch (const std::exception&) {
            // unparsable values leave the hardware default in place
        }
    }
    return n;
}

} // namespace nullgeo
