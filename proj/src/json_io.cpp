#include "modgl2/json_io.hpp"

#include "modgl2/error.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

namespace modgl2 {

namespace {

// FNV-1a over the compact dump; guards cache entries against truncation and
// hand edits that still parse.
std::string checksum(const Json& j)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json seal(Json payload)
{
    return {{"checksum", checksum(payload)}, {"data", std::move(payload)}};
}

const Json& unseal(const Json& sealed)
{
    const Json& payload = sealed.at("data");
    if (sealed.at("checksum").get<std::string>() != checksum(payload))
        throw ValidationError("checksum mismatch");
    return payload;
}

template <typename T>
T field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string("missing JSON field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(std::string("JSON field '") + key + "' has the wrong type");
    }
}

} // namespace

Json to_json(const RingElement& v)
{
    Json terms = Json::array();
    for (const auto& t : v.terms())
        terms.push_back({{"n", t.label.n}, {"m", t.label.m}, {"coeff", to_fraction_string(t.coeff)}});
    return {{"p", v.params().p()}, {"f", v.params().f()}, {"basis", basis_name(v.basis())}, {"terms", terms}};
}

RingElement ring_element_from_json(const Json& j)
{
    FieldParams params(field<int>(j, "p"), field<int>(j, "f"));
    Basis basis = parse_basis(field<std::string>(j, "basis"));
    const Json terms = field<Json>(j, "terms");
    if (!terms.is_array())
        throw ValidationError("'terms' must be an array");
    std::map<WeightLabel, Rational> out;
    for (const auto& t : terms) {
        int n = field<int>(t, "n");
        std::int64_t m = field<std::int64_t>(t, "m");
        Rational c = parse_rational(field<std::string>(t, "coeff"));
        if (c == 0)
            throw ValidationError("zero coefficient in ring element");
        WeightLabel l = make_label(params, n, m);
        if (!out.emplace(l, c).second)
            throw ValidationError("duplicate label in ring element");
    }
    return RingElement(params, basis, out);
}

Json to_json(const ConstantsReport& r)
{
    Json cr = Json::object();
    for (int k = 1; k <= r.params.h(); ++k)
        cr[std::to_string(k)] = to_fraction_string(r.C_r(k));
    return {{"p", r.params.p()},
            {"f", r.params.f()},
            {"h", r.params.h()},
            {"q", r.params.q()},
            {"max_norm", to_fraction_string(r.max_norm)},
            {"A", to_fraction_string(r.A)},
            {"M_upper", to_fraction_string(r.M_upper)},
            {"M_kind", "upper bound"},
            {"C_r", cr},
            {"C", to_fraction_string(r.C)}};
}

ConstantsReport constants_report_from_json(const Json& j)
{
    FieldParams params(field<int>(j, "p"), field<int>(j, "f"), field<int>(j, "h"));
    ConstantsReport r{params, parse_rational(field<std::string>(j, "max_norm")),
                      parse_rational(field<std::string>(j, "A")), parse_rational(field<std::string>(j, "M_upper")),
                      parse_rational(field<std::string>(j, "C"))};
    const int q = params.q();
    if (r.A != Rational(q * q + 2 * q) * r.max_norm || r.C != r.M_upper * r.C_r(params.h()) || r.max_norm < 1)
        throw ValidationError("constants report is internally inconsistent");
    return r;
}

Json to_json(const IntrinsicMultiplicities& weights)
{
    Json out = Json::array();
    for (const auto& [l, mu] : weights)
        out.push_back({{"n", l.n}, {"m", l.m}, {"mu", mu}});
    return out;
}

IntrinsicMultiplicities intrinsics_from_json(const FieldParams& params, const Json& j)
{
    if (!j.is_array())
        throw ValidationError("weights file must hold a JSON array");
    IntrinsicMultiplicities out;
    for (const auto& w : j) {
        WeightLabel l = make_label(params, field<int>(w, "n"), field<std::int64_t>(w, "m"));
        auto mu = field<std::int64_t>(w, "mu");
        if (mu < 0)
            throw ValidationError("intrinsic multiplicity must be nonnegative");
        if (!out.emplace(l, mu).second)
            throw ValidationError("duplicate weight in weights file");
    }
    return out;
}

Json to_json(const GaloisTypeClass& type)
{
    return {{"dim", type.dim_type}, {"label", type.label}, {"class", to_json(type.reduction_class)}};
}

GaloisTypeClass galois_type_from_json(const GrothendieckRing& ring, const Json& j)
{
    RingElement cls = ring_element_from_json(field<Json>(j, "class"));
    std::string label = j.contains("label") ? field<std::string>(j, "label") : std::string();
    return make_galois_type(ring, field<std::int64_t>(j, "dim"), cls, label);
}

Json to_json(const BoundReport& r)
{
    return {{"lhs", to_fraction_string(r.lhs)},
            {"dim_U", to_fraction_string(r.dim_U)},
            {"min_k_plus_1", to_fraction_string(r.min_k_plus_1)},
            {"W_S1", to_fraction_string(r.W_S1)},
            {"W_norm", to_fraction_string(r.W_norm)},
            {"rhs_theorem", to_fraction_string(r.rhs_theorem)},
            {"satisfied_theorem", r.satisfied_theorem},
            {"corollary_applicable", r.corollary_applicable},
            {"corollary_coefficient", to_fraction_string(r.corollary_coefficient)},
            {"rhs_corollary", r.rhs_corollary},
            {"satisfied_corollary", r.satisfied_corollary},
            {"satisfied", r.satisfied()}};
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

DiskCache::DiskCache(std::string path)
    : path_(std::move(path)), data_(Json::object())
{
    if (!std::filesystem::exists(path_))
        return;
    try {
        std::ifstream in(path_);
        data_ = Json::parse(in);
        if (!data_.is_object() || data_.value("version", 0) != 1 || !data_.contains("rings") ||
            !data_["rings"].is_object())
            throw ValidationError("unexpected layout");
    } catch (const std::exception& e) {
        warning_ = "discarding corrupt cache '" + path_ + "': " + e.what();
        data_ = Json::object();
    }
}

std::string DiskCache::ring_key(const FieldParams& params)
{
    return "p=" + std::to_string(params.p()) + ",f=" + std::to_string(params.f());
}

void DiskCache::load_into(GrothendieckRing& ring)
{
    if (!data_.contains("rings"))
        return;
    auto key = ring_key(ring.params());
    if (!data_["rings"].contains(key))
        return;
    try {
        const Json& entries = unseal(data_["rings"][key].at("structure_constants"));
        std::vector<std::pair<std::pair<int, int>, StructureConstants>> parsed;
        for (const auto& e : entries) {
            StructureConstants terms;
            for (const auto& t : e.at(2))
                terms.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<long>()});
            parsed.push_back({{e.at(0).get<int>(), e.at(1).get<int>()}, std::move(terms)});
        }
        if (!ring.import_structure_constants(parsed))
            throw ValidationError("structure constants failed validation");
    } catch (const std::exception& e) {
        warning_ = "discarding corrupt cache entry " + key + " in '" + path_ + "': " + e.what();
        data_["rings"].erase(key);
    }
}

void DiskCache::store_from(const GrothendieckRing& ring)
{
    Json entries = Json::array();
    for (const auto& [key, terms] : ring.export_structure_constants()) {
        Json t = Json::array();
        for (const auto& s : terms)
            t.push_back({s.n, s.twist, s.coeff});
        entries.push_back({key.first, key.second, t});
    }
    data_["version"] = 1;
    data_["rings"][ring_key(ring.params())]["structure_constants"] = seal(std::move(entries));
}

std::optional<ConstantsReport> DiskCache::constants(const FieldParams& params)
{
    auto key = ring_key(params);
    auto hkey = std::to_string(params.h());
    if (!data_.contains("rings") || !data_["rings"].contains(key))
        return std::nullopt;
    Json& ring = data_["rings"][key];
    if (!ring.contains("constants") || !ring["constants"].contains(hkey))
        return std::nullopt;
    try {
        auto r = constants_report_from_json(unseal(ring["constants"][hkey]));
        if (!r.params.same_ring(params) || r.params.h() != params.h())
            throw ValidationError("entry is for " + r.params.describe());
        return r;
    } catch (const std::exception& e) {
        warning_ = "discarding corrupt cached constants " + key + ",h=" + hkey + " in '" + path_ + "': " + e.what();
        ring["constants"].erase(hkey);
        return std::nullopt;
    }
}

void DiskCache::store_constants(const ConstantsReport& report)
{
    data_["version"] = 1;
    data_["rings"][ring_key(report.params)]["constants"][std::to_string(report.params.h())] = seal(to_json(report));
}

void DiskCache::save() const
{
    auto tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out)
            throw ValidationError("cannot write cache '" + path_ + "'");
        out << data_.dump();
    }
    std::filesystem::rename(tmp, path_);
}

} // namespace modgl2
