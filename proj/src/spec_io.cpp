#include "pstrace/spec_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pstrace/errors.hpp"

namespace pstrace {

namespace {

using nlohmann::json;

Rat rat_field(const json& j, const std::string& where) {
    if (!j.is_string())
        throw ParseError(where + ": rationals must be exact strings like \"3\" or \"-1/2\"");
    return rat_parse(j.get<std::string>());
}

Vec vec_field(const json& j, std::size_t expect, const std::string& where) {
    if (!j.is_array() || j.size() != expect)
        throw ParseError(where + ": expected an array of " + std::to_string(expect) + " rationals");
    Vec v;
    for (const auto& x : j) v.push_back(rat_field(x, where));
    return v;
}

Mat mat_field(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array() || j.size() != rows) throw ParseError(where + ": expected a matrix");
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        Vec row = vec_field(j[r], cols, where);
        m.set_row(r, row);
    }
    return m;
}

std::shared_ptr<const FiniteAlgebra> parse_structure_constants(const json& j) {
    if (!j.contains("labels") || !j["labels"].is_array())
        throw ParseError("structure_constants: missing labels");
    std::vector<std::string> labels;
    for (const auto& l : j["labels"]) {
        if (!l.is_string()) throw ParseError("labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    const std::size_t n = labels.size();

    std::vector<StructureTriple> triples;
    if (j.contains("structure")) {
        if (!j["structure"].is_array()) throw ParseError("structure must be an array");
        for (const auto& t : j["structure"]) {
            if (!t.is_array() || t.size() != 4)
                throw ParseError("structure entries are [i, j, k, \"p/q\"]");
            if (!t[0].is_number_unsigned() || !t[1].is_number_unsigned() ||
                !t[2].is_number_unsigned())
                throw ParseError("structure indices must be non-negative integers");
            StructureTriple st{t[0].get<std::size_t>(), t[1].get<std::size_t>(),
                               t[2].get<std::size_t>(), rat_field(t[3], "structure constant")};
            if (st.i >= n || st.j >= n || st.k >= n)
                throw ParseError("structure index out of range");
            triples.push_back(std::move(st));
        }
    }
    std::optional<Vec> unit;
    if (j.contains("unit")) unit = vec_field(j["unit"], n, "unit");
    return std::make_shared<FiniteAlgebra>(make_algebra(std::move(labels), triples, unit));
}

std::shared_ptr<const GradedRightModule> parse_graded(const json& j) {
    if (!j.contains("base")) throw ParseError("graded_end0: missing base algebra");
    auto g = std::make_shared<GradedRightModule>();
    g->base = parse_structure_constants(j["base"]);

    if (!j.contains("index_labels") || !j["index_labels"].is_array())
        throw ParseError("graded_end0: missing index_labels");
    for (const auto& l : j["index_labels"]) g->index_labels.push_back(l.get<std::string>());

    if (!j.contains("blocks") || !j["blocks"].is_array() ||
        j["blocks"].size() != g->index_labels.size())
        throw ParseError("graded_end0: one block per index label required");
    for (const auto& bj : j["blocks"]) {
        GradedRightModule::Block blk;
        if (!bj.contains("dim") || !bj["dim"].is_number_unsigned())
            throw ParseError("block: missing dim");
        blk.dim = bj["dim"].get<std::size_t>();
        if (!bj.contains("action") || !bj["action"].is_array() ||
            bj["action"].size() != g->base->dim())
            throw ParseError("block: one action matrix per base basis element required");
        for (const auto& mj : bj["action"])
            blk.action.push_back(mat_field(mj, blk.dim, blk.dim, "block action"));
        g->blocks.push_back(std::move(blk));
    }
    if (j.contains("stabilization_bound")) {
        if (!j["stabilization_bound"].is_number_unsigned())
            throw ParseError("stabilization_bound must be a non-negative integer");
        g->stabilization_bound = j["stabilization_bound"].get<std::size_t>();
    }
    validate_graded(*g);
    return g;
}

}  // namespace

AlgebraSpec parse_spec(const std::string& json_text, const std::string& name) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(name + ": " + e.what());
    }
    if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != 1)
        throw ParseError(name + ": unsupported or missing schema (expected 1)");
    if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError(name + ": missing kind");
    const std::string kind = j["kind"].get<std::string>();

    AlgebraSpec spec;
    spec.name = name;
    if (kind == "structure_constants")
        spec.payload = parse_structure_constants(j);
    else if (kind == "graded_end0")
        spec.payload = parse_graded(j);
    else
        throw ParseError(name + ": unknown kind '" + kind + "'");
    return spec;
}

AlgebraSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str(), std::filesystem::path(path).stem().string());
}

Vec parse_coords(const std::string& text, const FiniteAlgebra& a) {
    if (text == "unit") return a.unit_coords();
    Vec v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(rat_parse(tok));
    if (v.size() != a.dim())
        throw ParseError("expected " + std::to_string(a.dim()) + " coordinates");
    return v;
}

}  // namespace pstrace
