#pragma once

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ltlab {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1";

struct CheckRecord {
    std::string id;
    std::string claim;   // the mathematical statement being verified
    std::string status;  // "pass" | "fail" | "skipped"
    ordered_json data;   // deterministic payload
};

// A report is the machine artifact: stable field order, records sorted by id,
// no timing data (so repeated runs with the same config are byte-identical).
// Wall-clock per check goes to stderr only.
struct Report {
    std::string suite;
    std::string version = kArtifactVersion;
    std::vector<CheckRecord> checks;
    ordered_json summary;  // per-suite machine summary, may stay null

    bool all_pass() const;  // no failures and at least one check present
    int fail_count() const;
    int skip_count() const;
    ordered_json to_json() const;
    std::string human_table() const;
    void append(Report other);  // fold a sub-suite in (verify-all)
};

// Runs checks one at a time, turning check_error into a fail record and
// guard_error into a skipped record; usage errors and anything unexpected
// propagate. Prints per-check wall-clock to stderr.
class SuiteRunner {
  public:
    explicit SuiteRunner(std::string suite);
    void run(const std::string& id, const std::string& claim,
             const std::function<ordered_json()>& body);
    void skip(const std::string& id, const std::string& claim, const std::string& why);
    void set_summary(ordered_json s);
    Report take();  // sorts by id and enforces id uniqueness

  private:
    Report rep_;
};

// One flat bag of parameters for every subcommand; unset numeric fields are
// sentinel values resolved per suite. Round-trips losslessly through the
// key=value file format (sorted keys, one pair per line).
struct RunConfig {
    int64_t p = 3;
    int prec = 0;      // 0 picks the per-suite default
    int64_t wmax = -1;  // -1 picks the per-p guard
    int smax = -1;      // -1 picks 2(p-1)+1
    int ydeg = 0;
    int udeg = 1;
    char module = 'L';
    std::string method = "both";
    std::string suite;
    std::string out;   // report file path, empty = stdout/json only
    int threads = 0;
    bool json = false;
    bool allow_large = false;

    bool operator==(const RunConfig& o) const;
    std::string to_key_values() const;
    static RunConfig from_key_values(const std::string& text);  // throws usage_error
    static RunConfig from_file(const std::string& path);
};

}  // namespace ltlab
