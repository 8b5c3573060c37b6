#include "hints/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hints {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in " + what);
    return j;
}

int label_id(const std::vector<std::string>& names, const std::string& name, const std::string& ctx) {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return int(i);
    throw ParseError("unknown label '" + name + "' in " + ctx);
}

std::pair<std::vector<Label>, std::vector<double>> parse_tree_block(const json& j,
                                                                    const std::vector<std::string>& names) {
    if (!j.is_object()) throw ParseError("'tree' must map label names to {parent, weight}");
    std::vector<Label> parent(names.size(), kNoLabel);
    std::vector<double> weight(names.size(), 0.0);
    std::vector<bool> seen(names.size(), false);
    for (auto it = j.begin(); it != j.end(); ++it) {
        int id = label_id(names, it.key(), "tree");
        const json& e = it.value();
        if (!e.is_object() || !e.contains("parent") || !e.contains("weight"))
            throw ParseError("tree entry for '" + it.key() + "' needs parent and weight");
        seen[id] = true;
        if (e["parent"].is_null())
            parent[id] = kNoLabel;
        else
            parent[id] = label_id(names, e["parent"].get<std::string>(), "tree");
        weight[id] = e["weight"].get<double>();
    }
    for (size_t i = 0; i < names.size(); ++i)
        if (!seen[i]) throw ParseError("tree entry missing for label '" + names[i] + "'");
    return {parent, weight};
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json j = parse_json(text, "instance");
    Instance inst;
    try {
        inst.width = j.at("width").get<int>();
        inst.height = j.at("height").get<int>();
        std::string nb = j.at("neighborhood").get<std::string>();
        if (nb == "N4")
            inst.neighborhood = Neighborhood::N4;
        else if (nb == "N8")
            inst.neighborhood = Neighborhood::N8;
        else
            throw ParseError("neighborhood must be N4 or N8");
        inst.label_names = j.at("labels").get<std::vector<std::string>>();
        for (size_t i = 0; i < inst.label_names.size(); ++i)
            for (size_t k = i + 1; k < inst.label_names.size(); ++k)
                if (inst.label_names[i] == inst.label_names[k])
                    throw ParseError("duplicate label name '" + inst.label_names[i] + "'");
        auto [parent, weight] = parse_tree_block(j.at("tree"), inst.label_names);
        inst.tree = LabelTree(parent, weight);
        inst.lambda = j.at("lambda").get<double>();

        const int L = int(inst.label_names.size());
        const size_t npx = size_t(inst.width) * inst.height;
        inst.data.assign(npx * L, 0.0);
        const json& data = j.at("data");
        for (int l = 0; l < L; ++l) {
            const std::string& name = inst.label_names[l];
            if (!data.contains(name)) throw ParseError("data array missing for label '" + name + "'");
            const json& arr = data[name];
            if (!arr.is_array() || arr.size() != npx)
                throw ParseError("data array for '" + name + "' must have width*height entries");
            for (size_t p = 0; p < npx; ++p) {
                const json& v = arr[p];
                if (v.is_string()) {
                    if (v.get<std::string>() != "forbid")
                        throw ParseError("unknown data sentinel '" + v.get<std::string>() + "'");
                    inst.data[p * L + l] = kForbiddenCost;
                } else {
                    inst.data[p * L + l] = v.get<double>();
                }
            }
        }

        inst.margin.assign(L, 0.0);
        if (j.contains("margins"))
            for (auto it = j["margins"].begin(); it != j["margins"].end(); ++it)
                inst.margin[label_id(inst.label_names, it.key(), "margins")] = it.value().get<double>();

        inst.star_center.assign(L, std::nullopt);
        if (j.contains("stars"))
            for (auto it = j["stars"].begin(); it != j["stars"].end(); ++it) {
                auto xy = it.value().get<std::vector<int>>();
                if (xy.size() != 2) throw ParseError("star center must be [x, y]");
                inst.star_center[label_id(inst.label_names, it.key(), "stars")] = Pixel{xy[0], xy[1]};
            }

        if (j.contains("contrast"))
            for (const json& e : j["contrast"]) {
                if (!e.is_array() || e.size() != 3) throw ParseError("contrast entry must be [[x,y],[x,y],s]");
                auto a = e[0].get<std::vector<int>>();
                auto b = e[1].get<std::vector<int>>();
                if (a.size() != 2 || b.size() != 2) throw ParseError("contrast endpoints must be [x, y]");
                int pa = a[1] * inst.width + a[0];
                int pb = b[1] * inst.width + b[0];
                inst.contrast[Instance::pair_key(pa, pb)] = e[2].get<double>();
            }
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance document: ") + e.what());
    }

    auto diags = validate(inst);
    if (!diags.empty()) {
        std::string msg = "invalid instance:";
        for (const auto& d : diags) msg += "\n  - " + d;
        throw ValidationError(msg);
    }
    return inst;
}

Instance read_instance(const std::string& path) { return parse_instance(slurp(path)); }

std::string instance_to_json(const Instance& inst) {
    json j;
    j["width"] = inst.width;
    j["height"] = inst.height;
    j["neighborhood"] = inst.neighborhood == Neighborhood::N8 ? "N8" : "N4";
    j["labels"] = inst.label_names;
    json tree = json::object();
    for (int l = 0; l < inst.num_labels(); ++l) {
        json e;
        if (inst.tree.parent(l) == kNoLabel)
            e["parent"] = nullptr;
        else
            e["parent"] = inst.label_names[inst.tree.parent(l)];
        e["weight"] = inst.tree.edge_weight(l);
        tree[inst.label_names[l]] = e;
    }
    j["tree"] = tree;
    j["lambda"] = inst.lambda;
    json data = json::object();
    const int L = inst.num_labels();
    for (int l = 0; l < L; ++l) {
        json arr = json::array();
        for (int p = 0; p < inst.num_pixels(); ++p) {
            double v = inst.data[size_t(p) * L + l];
            if (v == kForbiddenCost)
                arr.push_back("forbid");
            else
                arr.push_back(v);
        }
        data[inst.label_names[l]] = arr;
    }
    j["data"] = data;
    json margins = json::object();
    for (int l = 0; l < L; ++l)
        if (inst.margin[l] > 0) margins[inst.label_names[l]] = inst.margin[l];
    if (!margins.empty()) j["margins"] = margins;
    json stars = json::object();
    for (int l = 0; l < L; ++l)
        if (inst.star_center[l])
            stars[inst.label_names[l]] = {inst.star_center[l]->x, inst.star_center[l]->y};
    if (!stars.empty()) j["stars"] = stars;
    if (!inst.contrast.empty()) {
        // Canonical order keeps writes byte-stable.
        std::map<uint64_t, double> sorted(inst.contrast.begin(), inst.contrast.end());
        json contrast = json::array();
        for (auto [key, s] : sorted) {
            int pa = int(key >> 32), pb = int(key & 0xffffffffu);
            Pixel a = inst.pixel_at(pa), b = inst.pixel_at(pb);
            contrast.push_back({{a.x, a.y}, {b.x, b.y}, s});
        }
        j["contrast"] = contrast;
    }
    return j.dump(2) + "\n";
}

void write_instance(const Instance& inst, const std::string& path) {
    spit(path, instance_to_json(inst));
}

void write_label_map(const Labeling& f, const std::string& path,
                     const std::vector<std::string>& names) {
    for (Label l : f.at)
        if (l < 0 || l > 255) throw ValidationError("label id out of PGM range");
    std::ostringstream ss;
    ss << "P5\n" << f.width << " " << f.height << "\n255\n";
    for (Label l : f.at) ss.put(char(uint8_t(l)));
    spit(path, ss.str());
    if (!names.empty()) {
        std::ostringstream ns;
        for (size_t i = 0; i < names.size(); ++i) ns << i << " " << names[i] << "\n";
        spit(path + ".names", ns.str());
    }
}

Labeling read_label_map(const std::string& path) {
    std::string raw = slurp(path);
    std::istringstream in(raw);
    std::string magic;
    in >> magic;
    if (magic != "P5") throw ParseError(path + ": not a binary PGM (P5)");
    auto next_token = [&]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw ParseError(path + ": truncated PGM header");
    };
    int w = std::stoi(next_token());
    int h = std::stoi(next_token());
    int maxval = std::stoi(next_token());
    if (maxval != 255) throw ParseError(path + ": PGM maxval must be 255");
    in.get();  // single whitespace after maxval
    Labeling f(w, h);
    for (int i = 0; i < w * h; ++i) {
        int c = in.get();
        if (c == EOF) throw ParseError(path + ": truncated PGM payload");
        f.at[i] = Label(uint8_t(c));
    }
    return f;
}

void write_label_ppm(const Labeling& f, const std::string& path) {
    static const uint8_t palette[16][3] = {
        {0, 0, 0},       {230, 25, 75},   {60, 180, 75},   {255, 225, 25},
        {0, 130, 200},   {245, 130, 48},  {145, 30, 180},  {70, 240, 240},
        {240, 50, 230},  {210, 245, 60},  {250, 190, 190}, {0, 128, 128},
        {170, 110, 40},  {128, 0, 0},     {128, 128, 0},   {255, 255, 255}};
    std::ostringstream ss;
    ss << "P6\n" << f.width << " " << f.height << "\n255\n";
    for (Label l : f.at) {
        const uint8_t* c = palette[l >= 0 ? l % 16 : 0];
        ss.put(char(c[0]));
        ss.put(char(c[1]));
        ss.put(char(c[2]));
    }
    spit(path, ss.str());
}

NamedTree read_tree(const std::string& path) {
    json j = parse_json(slurp(path), path);
    try {
        NamedTree nt;
        nt.names = j.at("labels").get<std::vector<std::string>>();
        auto [parent, weight] = parse_tree_block(j.at("tree"), nt.names);
        nt.tree = LabelTree(parent, weight);
        return nt;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

ConstraintFixture read_constraints(const std::string& path) {
    json j = parse_json(slurp(path), path);
    try {
        ConstraintFixture fx;
        fx.names = j.at("labels").get<std::vector<std::string>>();
        const int L = int(fx.names.size());
        for (auto it = j.at("tables").begin(); it != j.at("tables").end(); ++it) {
            ConstraintTable t = ConstraintTable::all_permissive(L);
            for (const json& pair : it.value()) {
                if (!pair.is_array() || pair.size() != 2)
                    throw ParseError("prohibited entry must be [p_label, q_label]");
                t.set(label_id(fx.names, pair[0].get<std::string>(), "constraints"),
                      label_id(fx.names, pair[1].get<std::string>(), "constraints"));
            }
            fx.tables[it.key()] = std::move(t);
        }
        return fx;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

static json breakdown_json(const EnergyBreakdown& e) {
    return {{"data_sum", e.data_sum},
            {"smoothness_sum", e.smoothness_sum},
            {"margin_violations", e.margin_violations},
            {"shape_violations", e.shape_violations},
            {"forbidden_uses", e.forbidden_uses},
            {"total_finite", e.total_finite},
            {"feasible", e.feasible}};
}

std::string breakdown_to_json(const EnergyBreakdown& e) { return breakdown_json(e).dump(2) + "\n"; }

std::string report_to_json(const Instance& inst, const SolverConfig& cfg, const SolveReport& rep) {
    json j;
    j["algorithm"] = cfg.algorithm == Algorithm::PathMoves ? "pathmoves" : "aexp";
    j["order"] = cfg.order == ExpansionOrder::FixedAscending ? "fixed" : "shuffle";
    j["seed"] = cfg.seed;
    j["max_sweeps"] = cfg.max_sweeps;
    j["tolerance"] = cfg.tolerance;
    j["sweeps"] = rep.sweeps;
    j["moves_accepted"] = rep.moves_accepted;
    j["final_energy"] = breakdown_json(rep.final_energy);
    j["final_labeling"] = rep.final_labeling.at;
    json trace = json::array();
    for (const auto& t : rep.trace)
        trace.push_back({{"sweep", t.sweep},
                         {"alpha", inst.label_names[t.alpha]},
                         {"accepted", t.accepted},
                         {"energy", t.energy},
                         {"feasible", t.feasible},
                         {"wall_ms", t.wall_ms}});
    j["trace"] = trace;
    json acc = json::array();
    for (const auto& f : rep.accepted_labelings) acc.push_back(f.at);
    j["accepted_labelings"] = acc;
    return j.dump(2) + "\n";
}

std::string score_to_json(const ScoreReport& s, const std::vector<std::string>& names) {
    json j;
    json rows = json::object();
    for (size_t l = 0; l < s.per_label.size(); ++l) {
        std::string key = l < names.size() ? names[l] : "label_" + std::to_string(l);
        rows[key] = {{"precision", s.per_label[l].precision},
                     {"recall", s.per_label[l].recall},
                     {"f1", s.per_label[l].f1},
                     {"truth_count", s.per_label[l].truth_count},
                     {"predicted_count", s.per_label[l].predicted_count}};
    }
    j["per_label"] = rows;
    j["weighted_precision"] = s.weighted_precision;
    j["weighted_recall"] = s.weighted_recall;
    j["weighted_f1"] = s.weighted_f1;
    j["unlabeled_fraction"] = s.unlabeled_fraction;
    return j.dump(2) + "\n";
}

}  // namespace hints
