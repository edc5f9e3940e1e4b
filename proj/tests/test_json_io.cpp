#include "helpers.hpp"

#include "modgl2/error.hpp"
#include "modgl2/expression.hpp"
#include "modgl2/json_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace modgl2;
using modgl2::testing::L;
using modgl2::testing::S;

namespace {

std::string temp_path(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "modgl2_tests";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::filesystem::remove(path);
    return path.string();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    out << text;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("ring element JSON format")
{
    FieldParams q9(3, 2);
    auto v = L(q9, 7, 1, fraction(3, 80)) + L(q9, 2, 0, -2);
    auto j = to_json(v);
    CHECK(j.dump() ==
          R"({"basis":"L","f":2,"p":3,"terms":[{"coeff":"-2/1","m":0,"n":2},{"coeff":"3/80","m":1,"n":7}]})");
    CHECK(ring_element_from_json(j) == v);
    auto s = S(q9, 3, 2, 5);
    CHECK(ring_element_from_json(to_json(s)) == s);
    CHECK(ring_element_from_json(to_json(RingElement(q9, Basis::L))).is_zero());
}

TEST_CASE("ring element JSON is read strictly")
{
    auto parse = [](const char* text) { return ring_element_from_json(Json::parse(text)); };
    CHECK_NOTHROW(parse(R"({"p":3,"f":2,"basis":"L","terms":[{"n":7,"m":1,"coeff":"3/80"}]})"));
    CHECK_THROWS_AS(parse(R"({"p":3,"f":2,"basis":"L","terms":[{"n":7,"m":1,"coeff":"0/1"}]})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"p":3,"f":2,"basis":"L","terms":[{"n":7,"m":1,"coeff":"1/1"},{"n":7,"m":9,"coeff":"1/1"}]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse(R"({"p":3,"f":2,"basis":"L","terms":[{"n":9,"m":1,"coeff":"1/1"}]})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"p":3,"f":2,"basis":"X","terms":[]})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"p":4,"f":1,"basis":"L","terms":[]})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"p":3,"f":2,"basis":"L"})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"p":3,"f":2,"basis":"L","terms":[{"n":1,"m":0,"coeff":"x"}]})"), ValidationError);
    CHECK_THROWS_AS(parse(R"([1,2])"), ValidationError);
}

TEST_CASE("constants report JSON")
{
    FieldParams params(3, 1);
    GrothendieckRing ring(params);
    auto report = Asymptotics(ring).compute_constants();
    auto j = to_json(report);
    CHECK(j["A"] == "240/1");
    CHECK(j["M_kind"] == "upper bound");
    CHECK(j["C_r"]["1"] == "695520/1");
    auto back = constants_report_from_json(j);
    CHECK(back.A == report.A);
    CHECK(back.C == report.C);
    CHECK(back.params.same_ring(report.params));
    CHECK(back.params.h() == report.params.h());
    auto bad = j;
    bad["A"] = "241/1";
    CHECK_THROWS_AS(constants_report_from_json(bad), ValidationError);
}

TEST_CASE("intrinsics and type JSON")
{
    FieldParams q5(5, 1);
    GrothendieckRing ring(q5);
    auto w = intrinsics_from_json(q5, Json::parse(R"([{"n":1,"m":0,"mu":1},{"n":3,"m":5,"mu":2}])"));
    CHECK(w == IntrinsicMultiplicities{{{1, 0}, 1}, {{3, 1}, 2}});
    CHECK(intrinsics_from_json(q5, to_json(w)) == w);
    CHECK_THROWS_AS(intrinsics_from_json(q5, Json::parse(R"([{"n":1,"m":0,"mu":-1}])")), ValidationError);
    CHECK_THROWS_AS(intrinsics_from_json(q5, Json::parse(R"([{"n":1,"m":0,"mu":1},{"n":1,"m":4,"mu":1}])")),
                    ValidationError);

    auto type = preset_type_trivial_qp(ring);
    auto tj = to_json(type);
    CHECK(tj["dim"] == 5);
    auto back = galois_type_from_json(ring, tj);
    CHECK(back.reduction_class == type.reduction_class);
    CHECK(back.label == "trivial");
    tj["dim"] = 4;
    CHECK_THROWS_AS(galois_type_from_json(ring, tj), ValidationError);
}

TEST_CASE("expression parser")
{
    FieldParams q3(3, 1), q9(3, 2);
    GrothendieckRing r3(q3), r9(q9);
    CHECK(parse_element(r3, "[L_1(0)]") == L(q3, 1, 0));
    CHECK(parse_element(r3, " 2*[L_1(0)] + 1/2*[L_2(1)] - [L_0(3)] ") ==
          L(q3, 1, 0, 2) + L(q3, 2, 1, fraction(1, 2)) - L(q3, 0, 1));
    CHECK(parse_element(r3, "-[L_1(0)]") == L(q3, 1, 0, -1));
    CHECK(parse_element(r9, "[S_7(0)]") == L(q9, 7, 0) + L(q9, 3, 2));
    CHECK(parse_element(r9, "[L_7(1)]").to_string() == L(q9, 7, 1).to_string());
    CHECK(parse_element(r9, R"({"p":3,"f":2,"basis":"S","terms":[{"n":7,"m":0,"coeff":"1/1"}]})") ==
          L(q9, 7, 0) + L(q9, 3, 2));
    CHECK_THROWS_AS(parse_element(r3, R"({"p":3,"f":2,"basis":"L","terms":[]})"), ValidationError);
    CHECK_THROWS_AS(parse_element(r3, "{not json"), ValidationError);
    CHECK_THROWS_AS(parse_element(r3, ""), ValidationError);
    CHECK_THROWS_AS(parse_element(r3, "[L_3(0)]"), ValidationError);
    CHECK_THROWS_AS(parse_element(r3, "[X_1(0)]"), ValidationError);
    CHECK_THROWS_AS(parse_element(r3, "[L_1(0)] [L_1(0)]"), ValidationError);
    CHECK_THROWS_AS(parse_element(r3, "2[L_1(0)]"), ValidationError);
    CHECK_THROWS_AS(parse_element(r3, "1/0*[L_1(0)]"), ValidationError);
}

TEST_CASE("factor lists")
{
    FieldParams q9(3, 2);
    auto f = parse_factors(q9, "50:0,8:3:1,7");
    REQUIRE(f.size() == 3);
    CHECK(f[0] == SymmFactor{50, 0, 0});
    CHECK(f[1] == SymmFactor{8, 3, 1});
    CHECK(f[2] == SymmFactor{7, 0, 0});
    CHECK(parse_factors(q9, "3:-1:3")[0] == SymmFactor{3, 7, 1});
    CHECK_THROWS_AS(parse_factors(q9, ""), ValidationError);
    CHECK_THROWS_AS(parse_factors(q9, "1:2:3:4"), ValidationError);
    CHECK_THROWS_AS(parse_factors(q9, "a:1"), ValidationError);
    CHECK_THROWS_AS(parse_factors(q9, "-1"), ValidationError);
    CHECK_THROWS_AS(parse_factors(q9, "1,,2"), ValidationError);
}

TEST_CASE("disk cache round trip")
{
    auto path = temp_path("roundtrip.json");
    FieldParams params(3, 2);
    GrothendieckRing ring(params);
    auto x = ring.multiply(L(params, 8, 1), L(params, 5, 3));
    auto report = Asymptotics(ring).compute_constants();
    {
        DiskCache cache(path);
        CHECK(cache.warning().empty());
        cache.store_from(ring);
        cache.store_constants(report);
        cache.save();
    }
    DiskCache cache(path);
    CHECK(cache.warning().empty());
    GrothendieckRing warm(params);
    cache.load_into(warm);
    CHECK(cache.warning().empty());
    CHECK(warm.cached_structure_constants() == ring.cached_structure_constants());
    CHECK(warm.multiply(L(params, 8, 1), L(params, 5, 3)) == x);
    auto cached = cache.constants(params);
    REQUIRE(cached.has_value());
    CHECK(cached->C == report.C);
    CHECK_FALSE(cache.constants(FieldParams(3, 2, 4)).has_value());
    CHECK_FALSE(cache.constants(FieldParams(5, 1)).has_value());
}

TEST_CASE("corrupt cache files are discarded")
{
    FieldParams params(3, 1);
    GrothendieckRing ring(params);
    auto report = Asymptotics(ring).compute_constants();

    auto garbage = temp_path("garbage.json");
    write_file(garbage, "{ this is not json");
    DiskCache g(garbage);
    CHECK_FALSE(g.warning().empty());
    CHECK_FALSE(g.constants(params).has_value());

    auto layout = temp_path("layout.json");
    write_file(layout, R"({"version":7,"rings":{}})");
    CHECK_FALSE(DiskCache(layout).warning().empty());

    auto tampered = temp_path("tampered.json");
    {
        DiskCache cache(tampered);
        cache.store_from(ring);
        cache.store_constants(report);
        cache.save();
    }
    auto text = read_file(tampered);
    auto pos = text.find("\"A\":\"240/1\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 11, "\"A\":\"250/1\"");
    write_file(tampered, text);
    DiskCache t(tampered);
    CHECK(t.warning().empty());
    CHECK_FALSE(t.constants(params).has_value());
    CHECK(t.warning().find("checksum") != std::string::npos);

    // a structure-constant edit that keeps dimension and central character
    auto sc = temp_path("structure.json");
    {
        DiskCache cache(sc);
        cache.store_from(ring);
        cache.save();
    }
    auto j = Json::parse(read_file(sc));
    auto& entries = j["rings"]["p=3,f=1"]["structure_constants"]["data"];
    REQUIRE(entries.size() > 0);
    entries[0][2][0][1] = entries[0][2][0][1].get<int>() + 1;  // twist + (q-1)/2
    write_file(sc, j.dump());
    DiskCache s(sc);
    GrothendieckRing fresh(params);
    auto before = fresh.cached_structure_constants();
    s.load_into(fresh);
    CHECK_FALSE(s.warning().empty());
    CHECK(fresh.cached_structure_constants() == before);
}
