#pragma once

#include "qfermion/scalar.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace qfermion {

inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/** outcome of one relation check */
struct CheckResult {
    std::string id;
    std::map<std::string, int> params;   // e.g. {"i":1,"j":2,"n":-2}
    bool pass = false;
    std::size_t residual_terms = 0;      // term count of lhs − rhs (0 when pass)
    std::uint64_t residual_hash = 0;     // hash of the canonical residual text
    std::string note;

    static CheckResult ok(std::string id, std::map<std::string, int> params = {}) {
        CheckResult r;
        r.id = std::move(id);
        r.params = std::move(params);
        r.pass = true;
        return r;
    }

    template <typename Element>  // anything with is_zero/term_count/to_string
    static CheckResult from_residual(std::string id, const Element& residual,
                                     std::map<std::string, int> params = {},
                                     std::string note = {}) {
        CheckResult r;
        r.id = std::move(id);
        r.params = std::move(params);
        r.note = std::move(note);
        r.pass = residual.is_zero();
        if (!r.pass) {
            r.residual_terms = residual.term_count();
            r.residual_hash = fnv1a(residual.to_string());
        }
        return r;
    }

    static CheckResult boolean(std::string id, bool pass,
                               std::map<std::string, int> params = {},
                               std::string note = {}) {
        CheckResult r;
        r.id = std::move(id);
        r.params = std::move(params);
        r.pass = pass;
        r.note = std::move(note);
        return r;
    }
};

struct Report {
    std::string suite;
    int n = 0;
    std::string backend = "exact";
    std::vector<std::string> q_samples;
    std::vector<CheckResult> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::size_t failure_count() const {
        std::size_t k = 0;
        for (const auto& c : checks)
            if (!c.pass) ++k;
        return k;
    }
    void append(const Report& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }

    nlohmann::json to_json() const {
        nlohmann::json out;
        out["suite"] = suite;
        out["n"] = n;
        out["backend"] = backend;
        out["q_samples"] = q_samples;
        out["total"] = checks.size();
        out["failures"] = failure_count();
        out["passed"] = passed();
        auto& arr = out["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json j;
            j["id"] = c.id;
            j["params"] = c.params;
            j["status"] = c.pass ? "pass" : "fail";
            j["residual_terms"] = c.residual_terms;
            char buf[19];
            std::snprintf(buf, sizeof buf, "0x%016llx",
                          static_cast<unsigned long long>(c.residual_hash));
            j["residual_hash"] = std::string(buf);
            if (!c.note.empty()) j["note"] = c.note;
            arr.push_back(std::move(j));
        }
        return out;
    }

    std::string to_text() const {
        std::string out;
        for (const auto& c : checks) {
            out += c.pass ? "pass  " : "FAIL  ";
            out += c.id;
            if (!c.params.empty()) {
                out += " (";
                bool first = true;
                for (const auto& [k, v] : c.params) {
                    if (!first) out += ", ";
                    out += k + "=" + std::to_string(v);
                    first = false;
                }
                out += ")";
            }
            if (!c.pass) out += "  residual_terms=" + std::to_string(c.residual_terms);
            if (!c.note.empty()) out += "  [" + c.note + "]";
            out += "\n";
        }
        out += passed() ? "all checks passed\n"
                        : std::to_string(failure_count()) + " check(s) failed\n";
        return out;
    }
};

// run independent checks, optionally on several threads; result order is
// deterministic regardless of the job count
inline std::vector<CheckResult> run_checks(
    const std::vector<std::function<CheckResult()>>& tasks, unsigned jobs) {
    std::vector<CheckResult> results(tasks.size());
    if (jobs <= 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            results[i] = tasks[i]();
        }
    };
    std::vector<std::thread> pool;
    unsigned count = std::min<std::size_t>(jobs, tasks.size());
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace qfermion
