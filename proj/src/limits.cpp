#include "kontsevich/limits.hpp"

#include <cstdlib>
#include <string>

#include "kontsevich/errors.hpp"

namespace kontsevich {

int degree_cap(int fallback) {
    const char* env = std::getenv("KONTSEVICH_CAP_DEGREE");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        std::size_t used = 0;
        const int value = std::stoi(env, &used);
        if (used != std::string(env).size() || value < 0) throw std::invalid_argument(env);
        return value;
    } catch (const std::exception&) {
        throw ParseError(std::string("KONTSEVICH_CAP_DEGREE is not a nonnegative integer: ") + env);
    }
}

}  // namespace kontsevich
