#include "ltlab/report.hpp"

#include "ltlab/zmod.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ltlab {

bool Report::all_pass() const {
    if (checks.empty()) return false;
    return fail_count() == 0;
}

int Report::fail_count() const {
    int n = 0;
    for (const auto& c : checks)
        if (c.status == "fail") ++n;
    return n;
}

int Report::skip_count() const {
    int n = 0;
    for (const auto& c : checks)
        if (c.status == "skipped") ++n;
    return n;
}

ordered_json Report::to_json() const {
    ordered_json j;
    j["suite"] = suite;
    j["version"] = version;
    j["checks"] = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json r;
        r["id"] = c.id;
        r["claim"] = c.claim;
        r["status"] = c.status;
        r["data"] = c.data;
        j["checks"].push_back(std::move(r));
    }
    if (!summary.is_null()) j["summary"] = summary;
    return j;
}

std::string Report::human_table() const {
    size_t idw = 2;
    for (const auto& c : checks) idw = std::max(idw, c.id.size());
    std::ostringstream os;
    os << "suite " << suite << "\n";
    for (const auto& c : checks) {
        os << "  " << c.status << std::string(8 - c.status.size(), ' ');
        os << c.id << std::string(idw - c.id.size() + 2, ' ');
        os << c.claim << "\n";
    }
    os << "  " << checks.size() << " checks: " << (checks.size() - fail_count() - skip_count())
       << " pass, " << fail_count() << " fail, " << skip_count() << " skipped\n";
    return os.str();
}

void Report::append(Report other) {
    for (auto& c : other.checks) checks.push_back(std::move(c));
    if (!other.summary.is_null()) summary[other.suite] = std::move(other.summary);
}

SuiteRunner::SuiteRunner(std::string suite) { rep_.suite = std::move(suite); }

void SuiteRunner::run(const std::string& id, const std::string& claim,
                      const std::function<ordered_json()>& body) {
    CheckRecord rec{id, claim, "pass", ordered_json()};
    auto t0 = std::chrono::steady_clock::now();
    try {
        rec.data = body();
    } catch (const check_error& e) {
        rec.status = "fail";
        rec.data = ordered_json{{"error", e.what()}};
    } catch (const guard_error& e) {
        rec.status = "skipped";
        rec.data = ordered_json{{"guard", e.what()}};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "[%9.3fs] %-8s %s\n", secs, rec.status.c_str(), id.c_str());
    rep_.checks.push_back(std::move(rec));
}

void SuiteRunner::skip(const std::string& id, const std::string& claim,
                       const std::string& why) {
    rep_.checks.push_back(CheckRecord{id, claim, "skipped", ordered_json{{"guard", why}}});
    std::fprintf(stderr, "[%9.3fs] %-8s %s\n", 0.0, "skipped", id.c_str());
}

void SuiteRunner::set_summary(ordered_json s) { rep_.summary = std::move(s); }

Report SuiteRunner::take() {
    std::sort(rep_.checks.begin(), rep_.checks.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    for (size_t i = 1; i < rep_.checks.size(); ++i)
        if (rep_.checks[i].id == rep_.checks[i - 1].id)
            throw check_error("report: duplicate check id " + rep_.checks[i].id);
    return std::move(rep_);
}

bool RunConfig::operator==(const RunConfig& o) const {
    return p == o.p && prec == o.prec && wmax == o.wmax && smax == o.smax &&
           ydeg == o.ydeg && udeg == o.udeg && module == o.module && method == o.method &&
           suite == o.suite && out == o.out && threads == o.threads && json == o.json &&
           allow_large == o.allow_large;
}

std::string RunConfig::to_key_values() const {
    std::ostringstream os;
    os << "allowLarge=" << (allow_large ? "true" : "false") << "\n";
    os << "json=" << (json ? "true" : "false") << "\n";
    os << "method=" << method << "\n";
    os << "module=" << module << "\n";
    os << "out=" << out << "\n";
    os << "p=" << p << "\n";
    os << "prec=" << prec << "\n";
    os << "smax=" << smax << "\n";
    os << "suite=" << suite << "\n";
    os << "threads=" << threads << "\n";
    os << "udeg=" << udeg << "\n";
    os << "wmax=" << wmax << "\n";
    os << "ydeg=" << ydeg << "\n";
    return os.str();
}

RunConfig RunConfig::from_key_values(const std::string& text) {
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto as_int = [&](const std::string& v) {
        size_t pos = 0;
        long long r = 0;
        try {
            r = std::stoll(v, &pos);
        } catch (...) {
            pos = 0;
        }
        if (pos != v.size())
            throw usage_error("config line " + std::to_string(lineno) + ": bad integer '" +
                              v + "'");
        return r;
    };
    auto as_bool = [&](const std::string& v) {
        if (v == "true") return true;
        if (v == "false") return false;
        throw usage_error("config line " + std::to_string(lineno) + ": bad boolean '" + v +
                          "'");
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw usage_error("config line " + std::to_string(lineno) + ": expected key=value");
        std::string k = line.substr(0, eq), v = line.substr(eq + 1);
        if (k == "p") c.p = as_int(v);
        else if (k == "prec") c.prec = int(as_int(v));
        else if (k == "wmax") c.wmax = as_int(v);
        else if (k == "smax") c.smax = int(as_int(v));
        else if (k == "ydeg") c.ydeg = int(as_int(v));
        else if (k == "udeg") c.udeg = int(as_int(v));
        else if (k == "module") {
            if (v != "A" && v != "L")
                throw usage_error("config line " + std::to_string(lineno) +
                                  ": module must be A or L");
            c.module = v[0];
        } else if (k == "method") c.method = v;
        else if (k == "suite") c.suite = v;
        else if (k == "out") c.out = v;
        else if (k == "threads") c.threads = int(as_int(v));
        else if (k == "json") c.json = as_bool(v);
        else if (k == "allowLarge") c.allow_large = as_bool(v);
        else throw usage_error("config line " + std::to_string(lineno) + ": unknown key '" +
                               k + "'");
    }
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw usage_error("config file not readable: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return from_key_values(os.str());
}

}  // namespace ltlab
