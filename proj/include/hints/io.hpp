#pragma once

#include <map>
#include <string>

#include "hints/instance.hpp"
#include "hints/representability.hpp"
#include "hints/scoring.hpp"
#include "hints/solver.hpp"

namespace hints {

// Instance documents are JSON; schema in docs/format.md. Readers throw
// ParseError on malformed documents and ValidationError when the parsed
// instance fails its invariants. write(read(f)) round-trips identically.
Instance read_instance(const std::string& path);
Instance parse_instance(const std::string& text);
std::string instance_to_json(const Instance& inst);
void write_instance(const Instance& inst, const std::string& path);

// Binary PGM (P5, maxval 255), pixel value = label id, plus a text sidecar
// "<path>.names" mapping id -> label name when names are available.
void write_label_map(const Labeling& f, const std::string& path,
                     const std::vector<std::string>& names = {});
Labeling read_label_map(const std::string& path);

// Color rendering for human inspection (fixed palette over label ids).
void write_label_ppm(const Labeling& f, const std::string& path);

// Tree fixture: {"labels": [...], "tree": {name: {parent, weight}}}. Full
// instance documents are accepted too.
struct NamedTree {
    LabelTree tree{{kNoLabel}, {0.0}};
    std::vector<std::string> names;
};
NamedTree read_tree(const std::string& path);

// Constraint fixture: {"labels": [...], "tables": {direction: [[p,q], ...]}}
// listing prohibited ordered label pairs per direction class.
struct ConstraintFixture {
    std::vector<std::string> names;
    std::map<std::string, ConstraintTable> tables;
};
ConstraintFixture read_constraints(const std::string& path);

std::string report_to_json(const Instance& inst, const SolverConfig& cfg, const SolveReport& rep);
std::string breakdown_to_json(const EnergyBreakdown& e);
std::string score_to_json(const ScoreReport& s, const std::vector<std::string>& names);

}  // namespace hints
