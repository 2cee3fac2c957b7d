#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tropdual/duality.hpp"
#include "tropdual/patchwork.hpp"

namespace tropdual {

using json = nlohmann::json;

struct Fixture {
    std::string name;
    std::string path;
    int n = 0;
    std::vector<Point> polytope;
    std::vector<std::vector<Point>> triangulation;  // empty when only the polytope is given
    std::optional<SignMap> signs;
    std::vector<Ring> rings;
    std::vector<std::pair<std::string, Point>> marked_vertices;
    json expected = json::object();
};

// Throws SchemaError with the offending field in the message.
Fixture parse_fixture(const json& j, const std::string& path = "<memory>");
Fixture load_fixture(const std::string& path);

struct Record {
    std::string check_id;
    std::string anchor;
    json parameters = json::object();
    std::string verdict;  // PASS, FAIL, SKIP (hypothesis not met) or INFO
    json values = json::object();
    double elapsed = 0;
};

struct Report {
    std::string fixture;
    std::string ring;
    std::vector<Record> records;

    bool ok() const;  // no FAIL records
    json to_json(bool with_timing = true) const;
};

// Geometry shared by the commands of one run.
class Session {
public:
    Session(const Fixture& fx, bool strict);
    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;

    const Fixture& fixture() const { return fx_; }
    const Polytope& polytope() const { return P_; }
    bool has_triangulation() const { return T_.has_value(); }
    const Triangulation& triangulation() const { return *T_; }
    const Omega& omega() const { return *W_; }

private:
    Fixture fx_;
    Polytope P_;
    std::optional<Triangulation> T_;
    std::optional<Omega> W_;
};

void cmd_check(Session& s, Ring ring, Report& out);
// With q set, the record also carries the rank in that single degree.
void cmd_homology(Session& s, Ring ring, std::optional<int> p, std::optional<int> q, Report& out);
void cmd_cohomology(Session& s, Ring ring, std::optional<int> p, std::optional<int> q, Report& out);
void cmd_spectral(Session& s, Ring ring, std::optional<int> p, Report& out);
void cmd_fundamental_class(Session& s, Ring ring, Report& out);
void cmd_duality(Session& s, Ring ring, Report& out);
void cmd_patchwork(Session& s, Report& out);
void cmd_all(Session& s, Ring ring, Report& out);

// Runs one subcommand. Returns the process exit code.
int run_command(const std::string& command, const std::string& fixture_path, const std::vector<std::string>& rings,
                std::optional<int> p, std::optional<int> q, bool strict, const std::string& report_path,
                std::ostream& text);

}  // namespace tropdual
