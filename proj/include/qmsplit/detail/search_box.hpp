#pragma once

#include <algorithm>
#include <future>
#include <thread>

namespace qmsplit {

template <class T>
std::vector<T> search_box(long height, unsigned threads,
                          const std::function<std::optional<T>(const std::array<Integer, 4>&)>& visit) {
    if (height < 0) return {};
    const long width = 2 * height + 1;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<long>(threads, width));

    // shard s owns first coordinates -height + s, -height + s + threads, ...
    auto run_shard = [&](unsigned shard) {
        std::vector<std::pair<long, T>> found;
        for (long c0 = -height + static_cast<long>(shard); c0 <= height; c0 += threads)
            for (long c1 = -height; c1 <= height; ++c1)
                for (long c2 = -height; c2 <= height; ++c2)
                    for (long c3 = -height; c3 <= height; ++c3) {
                        std::array<Integer, 4> c{Integer(c0), Integer(c1), Integer(c2), Integer(c3)};
                        if (auto hit = visit(c)) found.emplace_back(c0, std::move(*hit));
                    }
        return found;
    };

    std::vector<std::pair<long, T>> all;
    if (threads == 1) {
        all = run_shard(0);
    } else {
        std::vector<std::future<std::vector<std::pair<long, T>>>> jobs;
        for (unsigned s = 0; s < threads; ++s) jobs.push_back(std::async(std::launch::async, run_shard, s));
        for (auto& j : jobs) {
            auto part = j.get();
            std::move(part.begin(), part.end(), std::back_inserter(all));
        }
        // within one first coordinate the shard already emitted in order
        std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    std::vector<T> out;
    out.reserve(all.size());
    for (auto& [key, value] : all) out.push_back(std::move(value));
    return out;
}

}  // namespace qmsplit
