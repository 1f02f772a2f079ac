#pragma once

#include <cstdint>
#include <exception>
#include <vector>

namespace dhopf::detail {

/// out[i] = fn(i) for i < n. The parallel path catches per-item exceptions and rethrows the
/// first one (by index) after the loop, so both paths fail on the same item.
template <typename T, typename Fn>
std::vector<T> map_indices(std::size_t n, Fn&& fn, bool parallel) {
    std::vector<T> out(n);
    if (!parallel) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = fn(i);
        }
        return out;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto m = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < m; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

}  // namespace dhopf::detail
