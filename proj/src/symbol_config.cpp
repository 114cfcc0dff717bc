#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "levyhit/symbols.hpp"

namespace levyhit {

namespace {

double num(const toml::table& t, std::string_view key) {
    auto v = t[key].value<double>();
    if (!v) throw ArgumentError("spec config: missing or non-numeric '" + std::string(key) + "'");
    return *v;
}

std::vector<double> num_list(const toml::node* n, std::string_view key) {
    std::vector<double> out;
    const auto* arr = n ? n->as_array() : nullptr;
    if (!arr) throw ArgumentError("spec config: '" + std::string(key) + "' must be an array of numbers");
    for (const auto& e : *arr) {
        auto v = e.value<double>();
        if (!v) throw ArgumentError("spec config: '" + std::string(key) + "' must be an array of numbers");
        out.push_back(*v);
    }
    return out;
}

DensityTable read_table_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("spec config: cannot open density table " + path.string());
    DensityTable t;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        for (char& c : line)
            if (c == ',' || c == ';' || c == '\t') c = ' ';
        std::istringstream ls(line);
        double x, v;
        if (!(ls >> x >> v)) {
            if (t.x.empty()) continue;  // header row
            throw ArgumentError("spec config: malformed row in " + path.string() + ": " + line);
        }
        t.x.push_back(x);
        t.nu.push_back(v);
    }
    return t;
}

}  // namespace

SymbolSpec parse_spec(std::string_view text, const std::filesystem::path& base_dir) {
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error& e) {
        throw ArgumentError(std::string("spec config: ") + std::string(e.description()));
    }
    const toml::table* sym = root["symbol"].as_table();
    if (!sym) sym = &root;
    auto fam = (*sym)["family"].value<std::string>();
    if (!fam) throw ArgumentError("spec config: missing 'family'");
    const toml::table& s = *sym;
    SymbolSpec spec = [&]() -> SymbolSpec {
        if (*fam == "stable") return SymbolSpec::stable(num(s, "alpha"));
        if (*fam == "brownian") return SymbolSpec::brownian(s["sigma2"].value_or(1.0));
        if (*fam == "cauchy_plus_bm") return SymbolSpec::cauchy_plus_bm();
        if (*fam == "log_perturbed") return SymbolSpec::log_perturbed();
        if (*fam == "atomic_stablelike") return SymbolSpec::atomic_stablelike(num(s, "alpha"));
        if (*fam == "two_stable") return SymbolSpec::two_stable(num(s, "alpha1"), num(s, "alpha2"));
        if (*fam != "triplet") throw ArgumentError("spec config: unknown family '" + *fam + "'");
        LevyTriplet tr;
        tr.gaussian_coeff = s["gaussian_coeff"].value_or(0.0);
        Tri uni = tri_from_string(s["unimodal"].value_or(std::string("unknown")));
        Tri mono = tri_from_string(s["nondecreasing"].value_or(std::string("unknown")));
        if (const toml::table* m = s["levy_measure"].as_table()) {
            std::string kind = (*m)["kind"].value_or(std::string("none"));
            if (kind == "tag") {
                DensityTag g;
                g.name = (*m)["tag"].value_or(std::string());
                if ((*m)["params"]) g.params = num_list((*m)["params"].node(), "params");
                tr.levy_measure = g;
            } else if (kind == "table") {
                DensityTable t;
                if (auto file = (*m)["file"].value<std::string>()) {
                    std::filesystem::path p(*file);
                    if (p.is_relative()) p = base_dir / p;
                    t = read_table_csv(p);
                } else {
                    t.x = num_list((*m)["x"].node(), "x");
                    t.nu = num_list((*m)["nu"].node(), "nu");
                }
                t.power_left = (*m)["power_left"].value_or(true);
                t.power_right = (*m)["power_right"].value_or(true);
                tr.levy_measure = t;
            } else if (kind == "atoms") {
                AtomList a;
                const auto* arr = (*m)["atoms"].as_array();
                if (!arr) throw ArgumentError("spec config: 'atoms' must be an array of [position, mass]");
                for (const auto& e : *arr) {
                    auto pair = num_list(&e, "atoms");
                    if (pair.size() != 2) throw ArgumentError("spec config: atom entries are [position, mass]");
                    a.atoms.emplace_back(pair[0], pair[1]);
                }
                tr.levy_measure = a;
            } else if (kind != "none") {
                throw ArgumentError("spec config: unknown levy_measure kind '" + kind + "'");
            }
        }
        return SymbolSpec::from_triplet(std::move(tr), uni, mono);
    }();
    if (s["maximal"].value_or(false)) spec = spec.maximal();
    return spec;
}

SymbolSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open spec file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str(), path.parent_path());
}

}  // namespace levyhit
