#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

#include "udw/config.hpp"

namespace udw {

// Evaluates fn(0..n-1) on a pool of worker threads. Results land in index
// order, so the output does not depend on the worker count. The first
// exception escaping fn is rethrown after all workers stop.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int workers, F&& fn) {
    std::vector<T> out(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::atomic_flag error_set = ATOMIC_FLAG_INIT;

    auto work = [&] {
        for (std::size_t k; !failed && (k = next++) < n;) {
            try {
                out[k] = fn(k);
            } catch (...) {
                if (!error_set.test_and_set()) error = std::current_exception();
                failed = true;
            }
        }
    };
    const int count = std::max(1, std::min<int>(workers, static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int w = 1; w < count; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

struct Table {
    std::vector<std::string> header;  // comment lines without the leading '#'
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::size_t invalid_points = 0;
};

struct RunOptions {
    int workers = 1;
    std::filesystem::path out_dir = ".";
    std::string timestamp;  // empty: current UTC time
};

// Sweeps the output's grid. Per-point failures (validity, convergence,
// indeterminate ratio) become NaN rows with valid = 0.
Table compute_output(const ScenarioConfig& config, const OutputSpec& output, const RunOptions& options);

void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);

struct RunSummary {
    std::vector<std::filesystem::path> written;
    std::size_t invalid_points = 0;
};

// Computes and writes every output. Throws std::runtime_error on I/O errors.
RunSummary run_scenario(const ScenarioConfig& config, const RunOptions& options, std::ostream& log);

std::string utc_timestamp();

}  // namespace udw
