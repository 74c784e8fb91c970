#include "parampli/sweep.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace parampli {

unsigned resolve_threads(std::optional<unsigned> requested)
{
    if (requested) {
        if (*requested == 0) throw std::invalid_argument("threads must be >= 1");
        return *requested;
    }
    if (const char* env = std::getenv("PARAMPLI_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || v < 1)
            throw std::invalid_argument("PARAMPLI_THREADS must be a positive integer");
        return unsigned(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace parampli
