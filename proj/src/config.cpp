#include "sharpfront/config.hpp"

#include "sharpfront/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sharpfront {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw Error(ErrorCode::Config, "config field '" + field + "': " + message);
}

/// Reads the members of one JSON object, rejecting keys that nobody asked for.
class Section {
public:
    Section(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
        if (!doc_.is_object()) fail(path_, "expected an object");
    }

    ~Section() noexcept(false) {
        if (std::uncaught_exceptions() > 0) return;
        for (const auto& item : doc_.items()) {
            if (!seen_.count(item.key())) fail(name(item.key()), "unknown key");
        }
    }

    bool has(const std::string& key) const { return doc_.contains(key); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return doc_.at(key);
    }

    std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void number(const std::string& key, double& out) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_number()) fail(name(key), "expected a number");
        out = v.get<double>();
        if (!std::isfinite(out)) fail(name(key), "must be finite");
    }

    void number(const std::string& key, std::optional<double>& out) {
        if (!has(key)) return;
        if (raw(key).is_null()) {
            out.reset();
            return;
        }
        double v = 0.0;
        number(key, v);
        out = v;
    }

    void integer(const std::string& key, int& out) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_number_integer()) fail(name(key), "expected an integer");
        out = v.get<int>();
    }

    void text(const std::string& key, std::string& out) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_string()) fail(name(key), "expected a string");
        out = v.get<std::string>();
    }

    void numbers(const std::string& key, std::vector<double>& out) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_array()) fail(name(key), "expected an array of numbers");
        out.clear();
        for (const auto& e : v) {
            if (!e.is_number()) fail(name(key), "expected an array of numbers");
            out.push_back(e.get<double>());
        }
    }

private:
    const json& doc_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& field, const std::string& message) {
    if (!ok) fail(field, message);
}

NonlinearityConfig read_nonlinearity(const json& doc, const std::string& path) {
    NonlinearityConfig c;
    Section s(doc, path);
    s.text("kind", c.kind);
    s.number("theta0", c.theta0);
    s.number("a", c.a);
    s.number("A", c.A);
    s.text("form", c.form);
    s.number("p", c.p);
    s.number("amplitude", c.amplitude);
    s.text("declared", c.declared);
    if (s.has("table")) {
        const json& t = s.raw("table");
        if (!t.is_array()) fail(s.name("table"), "expected an array of [theta, f] pairs");
        for (const auto& row : t) {
            if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
                fail(s.name("table"), "expected an array of [theta, f] pairs");
            }
            c.table.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
    }
    static const std::set<std::string> kinds{"ignition", "kpp", "arrhenius", "bistable_cubic", "tabulated"};
    require(kinds.count(c.kind) > 0, s.name("kind"),
            "must be one of ignition, kpp, arrhenius, bistable_cubic, tabulated");
    require(c.form == "logistic" || c.form == "power", s.name("form"), "must be logistic or power");
    require(c.declared == "ignition" || c.declared == "combustion" || c.declared == "bistable",
            s.name("declared"), "must be ignition, combustion or bistable");
    require(c.amplitude >= 0.0, s.name("amplitude"), "must be non-negative");
    return c;
}

IcConfig read_ic(const json& doc, const std::string& path) {
    IcConfig c;
    Section s(doc, path);
    s.number("L", c.L);
    s.number("alpha", c.alpha);
    require(c.L >= 0.0, s.name("L"), "must be non-negative");
    require(c.alpha > 0.0 && c.alpha <= 1.0, s.name("alpha"), "must lie in (0, 1]");
    return c;
}

json nonlinearity_json(const NonlinearityConfig& c) {
    json j{{"kind", c.kind},   {"theta0", c.theta0}, {"a", c.a},
           {"A", c.A},         {"form", c.form},     {"p", c.p},
           {"amplitude", c.amplitude}, {"declared", c.declared}};
    json table = json::array();
    for (const auto& [t, f] : c.table) table.push_back(json::array({t, f}));
    j["table"] = table;
    return j;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::vector<std::string> split_dotted(const std::string& key) {
    std::vector<std::string> parts;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    return parts;
}

}  // namespace

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw Error(ErrorCode::Config, "config syntax error at line " + std::to_string(line) +
                                           ", column " + std::to_string(column) + ": " + e.what());
    }
}

RunConfig config_from_json(const json& doc) {
    RunConfig c;
    Section root(doc, "");
    if (!root.has("nonlinearity")) fail("nonlinearity", "section is required");
    c.nonlinearity = read_nonlinearity(root.raw("nonlinearity"), "nonlinearity");

    if (root.has("grid")) {
        Section s(root.raw("grid"), "grid");
        s.number("half_width", c.grid.half_width);
        s.integer("n_cells", c.grid.n_cells);
        require(c.grid.half_width > 0.0, "grid.half_width", "must be positive");
        require(c.grid.n_cells > 0 && c.grid.n_cells % 2 == 0, "grid.n_cells", "must be a positive even integer");
    }
    if (root.has("sim")) {
        Section s(root.raw("sim"), "sim");
        s.number("dt", c.sim.dt);
        s.number("t_max", c.sim.t_max);
        s.text("boundary", c.sim.boundary);
        s.integer("snapshot_every", c.sim.snapshot_every);
        s.number("probe_dt", c.sim.probe_dt);
        s.numbers("levels", c.sim.levels);
        require(!c.sim.dt || *c.sim.dt > 0.0, "sim.dt", "must be positive");
        require(c.sim.t_max > 0.0, "sim.t_max", "must be positive");
        require(c.sim.boundary == "dirichlet" || c.sim.boundary == "neumann", "sim.boundary",
                "must be dirichlet or neumann");
        require(c.sim.snapshot_every >= 0, "sim.snapshot_every", "must be non-negative");
        require(c.sim.probe_dt > 0.0, "sim.probe_dt", "must be positive");
    }
    if (root.has("ic")) c.ic = read_ic(root.raw("ic"), "ic");
    if (root.has("threshold")) {
        Section s(root.raw("threshold"), "threshold");
        s.number("L_min", c.threshold.L_min);
        s.number("L_max", c.threshold.L_max);
        s.number("gap_tol", c.threshold.gap_tol);
        s.integer("max_iter", c.threshold.max_iter);
        s.number("t_max", c.threshold.t_max);
        require(c.threshold.L_min >= 0.0 && c.threshold.L_max > c.threshold.L_min, "threshold.L_max",
                "bracket must satisfy 0 <= L_min < L_max");
        require(c.threshold.gap_tol > 0.0, "threshold.gap_tol", "must be positive");
        require(c.threshold.max_iter > 0, "threshold.max_iter", "must be positive");
        require(c.threshold.t_max > 0.0, "threshold.t_max", "must be positive");
    }
    if (root.has("front")) {
        Section s(root.raw("front"), "front");
        s.number("tol", c.front.tol);
        s.number("step", c.front.step);
        s.number("table_spacing", c.front.table_spacing);
        require(c.front.tol > 0.0, "front.tol", "must be positive");
        require(c.front.step > 0.0, "front.step", "must be positive");
        require(c.front.table_spacing >= c.front.step, "front.table_spacing", "must be at least front.step");
    }
    if (root.has("bump")) {
        Section s(root.raw("bump"), "bump");
        s.number("u_min", c.bump.u_min);
        s.number("spacing", c.bump.spacing);
        require(c.bump.u_min > 0.0, "bump.u_min", "must be positive");
        require(c.bump.spacing > 0.0, "bump.spacing", "must be positive");
    }
    if (root.has("lemma22")) {
        Section s(root.raw("lemma22"), "lemma22");
        if (s.has("g")) c.lemma22.g = read_nonlinearity(s.raw("g"), "lemma22.g");
        s.number("theta1", c.lemma22.theta1);
        s.number("eps1", c.lemma22.eps1);
        s.number("theta_max", c.lemma22.theta_max);
        if (s.has("ic_T")) c.lemma22.ic_T = read_ic(s.raw("ic_T"), "lemma22.ic_T");
        if (s.has("ic_S")) c.lemma22.ic_S = read_ic(s.raw("ic_S"), "lemma22.ic_S");
        s.number("warmup", c.lemma22.warmup);
        s.number("t_max", c.lemma22.t_max);
        require(c.lemma22.warmup >= 0.0, "lemma22.warmup", "must be non-negative");
        require(c.lemma22.t_max > 0.0, "lemma22.t_max", "must be positive");
    }
    if (root.has("sweep")) {
        Section s(root.raw("sweep"), "sweep");
        s.text("command", c.sweep.command);
        require(c.sweep.command == "threshold" || c.sweep.command == "front" ||
                    c.sweep.command == "bump" || c.sweep.command == "simulate",
                "sweep.command", "must be threshold, front, bump or simulate");
        if (s.has("cells")) {
            const json& cells = s.raw("cells");
            if (!cells.is_array()) fail("sweep.cells", "expected an array of override objects");
            for (const auto& cell : cells) {
                if (!cell.is_object()) fail("sweep.cells", "expected an array of override objects");
                c.sweep.cells.push_back(cell);
            }
        }
    }
    return c;
}

RunConfig parse_config(const std::string& text) { return config_from_json(parse_json(text)); }

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Config, "cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

json to_json(const RunConfig& c) {
    json cells = json::array();
    for (const auto& cell : c.sweep.cells) cells.push_back(cell);
    return json{
        {"nonlinearity", nonlinearity_json(c.nonlinearity)},
        {"grid", {{"half_width", c.grid.half_width}, {"n_cells", c.grid.n_cells}}},
        {"sim",
         {{"dt", optional_json(c.sim.dt)},
          {"t_max", c.sim.t_max},
          {"boundary", c.sim.boundary},
          {"snapshot_every", c.sim.snapshot_every},
          {"probe_dt", c.sim.probe_dt},
          {"levels", c.sim.levels}}},
        {"ic", {{"L", c.ic.L}, {"alpha", c.ic.alpha}}},
        {"threshold",
         {{"L_min", c.threshold.L_min},
          {"L_max", c.threshold.L_max},
          {"gap_tol", c.threshold.gap_tol},
          {"max_iter", c.threshold.max_iter},
          {"t_max", c.threshold.t_max}}},
        {"front", {{"tol", c.front.tol}, {"step", c.front.step}, {"table_spacing", c.front.table_spacing}}},
        {"bump", {{"u_min", c.bump.u_min}, {"spacing", c.bump.spacing}}},
        {"lemma22",
         {{"g", nonlinearity_json(c.lemma22.g)},
          {"theta1", optional_json(c.lemma22.theta1)},
          {"eps1", optional_json(c.lemma22.eps1)},
          {"theta_max", optional_json(c.lemma22.theta_max)},
          {"ic_T", {{"L", c.lemma22.ic_T.L}, {"alpha", c.lemma22.ic_T.alpha}}},
          {"ic_S", {{"L", c.lemma22.ic_S.L}, {"alpha", c.lemma22.ic_S.alpha}}},
          {"warmup", c.lemma22.warmup},
          {"t_max", c.lemma22.t_max}}},
        {"sweep", {{"command", c.sweep.command}, {"cells", cells}}},
    };
}

std::string emit_config(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorCode::Config, "override '" + assignment + "' is not of the form key=value");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;

    json* node = &doc;
    for (const auto& part : split_dotted(key)) {
        if (part.empty()) throw Error(ErrorCode::Config, "override key '" + key + "' has an empty component");
        if (!node->is_object() && !node->is_null()) {
            throw Error(ErrorCode::Config, "override key '" + key + "' descends into a non-object");
        }
        node = &(*node)[part];
    }
    *node = std::move(parsed);
}

Nonlinearity build_nonlinearity(const NonlinearityConfig& c) {
    if (c.kind == "ignition") return Nonlinearity::ignition(c.theta0, c.amplitude);
    if (c.kind == "kpp") {
        return c.form == "logistic" ? Nonlinearity::logistic(c.amplitude) : Nonlinearity::power(c.p, c.amplitude);
    }
    if (c.kind == "arrhenius") return Nonlinearity::arrhenius(c.A, c.amplitude);
    if (c.kind == "bistable_cubic") return Nonlinearity::bistable(c.a, c.amplitude);
    if (c.kind == "tabulated") {
        std::vector<double> thetas;
        std::vector<double> values;
        for (const auto& [t, f] : c.table) {
            thetas.push_back(t);
            values.push_back(f);
        }
        const SignPattern declared = c.declared == "ignition"     ? SignPattern::IgnitionPlateau
                                     : c.declared == "combustion" ? SignPattern::PositiveInterior
                                                                  : SignPattern::Bistable;
        return Nonlinearity::tabulated(std::move(thetas), std::move(values), declared, c.amplitude);
    }
    throw Error(ErrorCode::Config, "unknown nonlinearity kind '" + c.kind + "'");
}

Grid build_grid(const GridConfig& c) { return Grid(c.half_width, c.n_cells); }

Boundary parse_boundary(const std::string& name) {
    if (name == "dirichlet") return Boundary::DirichletZero;
    if (name == "neumann") return Boundary::NeumannZero;
    throw Error(ErrorCode::Config, "unknown boundary '" + name + "'");
}

SimParams build_params(const RunConfig& config, const Nonlinearity& spec, double t_max) {
    const Grid grid = build_grid(config.grid);
    SimParams p = default_params(grid, spec, t_max);
    if (config.sim.dt) p.dt = *config.sim.dt;
    p.boundary = parse_boundary(config.sim.boundary);
    p.snapshot_every = config.sim.snapshot_every;
    return p;
}

}  // namespace sharpfront
