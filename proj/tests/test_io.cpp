#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "bnnfit/errors.hpp"
#include "bnnfit/io.hpp"

using namespace bnnfit;

namespace {

PointCloudFunction parse(const std::string& text, std::string_view x = "x", std::string_view y = "y") {
    std::istringstream in(text);
    return parse_csv(in, x, y);
}

}  // namespace

TEST_SUITE("io") {
    TEST_CASE("shortest round-trip doubles") {
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(-2.0) == "-2");
        for (double v : {1.0 / 3.0, std::sqrt(2.0), -1e-300, 6.02214076e23, 5e-324}) {
            CHECK(parse_double(format_double(v)) == v);
        }
        CHECK(parse_double("+1.5") == 1.5);
        CHECK(parse_double(" 2.5 ") == 2.5);
        CHECK_THROWS_AS(parse_double("nan"), InvalidArgument);
        CHECK_THROWS_AS(parse_double("1.5abc"), InvalidArgument);
        CHECK_THROWS_AS(parse_double(""), InvalidArgument);
    }

    TEST_CASE("csv columns by name") {
        const auto c = parse("date,price,x,y\n1,10,0.5,3\n2,11,0.0,4\n", "x", "y");
        CHECK(c.xs() == std::vector<double>{0.0, 0.5});
        CHECK(c.ys() == std::vector<double>{4.0, 3.0});
        const auto d = parse("date,price\n1,10\n2,11\n", "date", "price");
        CHECK(d.ys() == std::vector<double>{10.0, 11.0});
    }

    TEST_CASE("csv tolerates BOM, CRLF, blank lines and quotes") {
        const auto c = parse("\xEF\xBB\xBFx,\"y\"\r\n0, 1\r\n\r\n\"1\",2\r\n");
        CHECK(c.xs() == std::vector<double>{0.0, 1.0});
        CHECK(c.ys() == std::vector<double>{1.0, 2.0});
    }

    TEST_CASE("duplicate abscissas") {
        CHECK(parse("x,y\n0,1\n1,2\n0,1\n").size() == 2);
        CHECK_THROWS_AS(parse("x,y\n0,1\n1,2\n0,5\n"), FunctionConsistencyViolation);
    }

    TEST_CASE("parse errors carry the line number") {
        try {
            parse("x,y\n0,1\n1,oops\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row() == 3);
        }
        try {
            parse("x,z\n0,1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row() == 1);
        }
        CHECK_THROWS_AS(parse("x,y\n0\n"), ParseError);
        CHECK_THROWS_AS(parse("x,y\n"), EmptyInput);
        CHECK_THROWS_AS(parse("x,y\n0,inf\n"), ParseError);
        CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", "x", "y"), InputError);
    }

    TEST_CASE("sine generator") {
        const auto clean = gen_sine(250, -10.0, 10.0, 0.0, 0);
        CHECK(clean.size() == 250);
        CHECK(clean.lower() == -10.0);
        CHECK(clean.upper() == 10.0);
        for (std::size_t i = 0; i < clean.size(); ++i) CHECK(clean.ys()[i] == std::sin(clean.xs()[i]));
        CHECK(gen_sine(100, 0.0, 1.0, 0.3, 9) == gen_sine(100, 0.0, 1.0, 0.3, 9));
        CHECK_FALSE(gen_sine(100, 0.0, 1.0, 0.3, 9) == gen_sine(100, 0.0, 1.0, 0.3, 10));
        CHECK_THROWS_AS(gen_sine(1, 0.0, 1.0, 0.0, 0), InvalidArgument);
        CHECK_THROWS_AS(gen_sine(10, 1.0, 0.0, 0.0, 0), InvalidArgument);
    }

    TEST_CASE("cloud csv round trip is exact") {
        const auto cloud = gen_sine(50, -3.0, 7.0, 0.2, 4);
        std::ostringstream out;
        write_cloud_csv(out, cloud);
        CHECK(out.str().rfind("x,y\n", 0) == 0);
        CHECK(parse(out.str()) == cloud);
    }

    TEST_CASE("trace csv round trip") {
        TrainTrace trace;
        for (std::size_t e = 0; e < 3; ++e) {
            trace.records.push_back({e, 1.0 / (e + 3.0), 0.1 * e, std::sqrt(0.1 * e), 0.7, 1e-9, std::nullopt});
        }
        std::ostringstream out;
        write_trace_csv(out, trace);
        CHECK(out.str().rfind("epoch,loss,mse,rmse,mae,logcosh\n", 0) == 0);
        std::istringstream in(out.str());
        const auto back = read_trace_csv(in);
        REQUIRE(back.records.size() == 3);
        for (std::size_t e = 0; e < 3; ++e) {
            CHECK(back.records[e].epoch == e);
            CHECK(back.records[e].loss == trace.records[e].loss);
            CHECK(back.records[e].rmse == trace.records[e].rmse);
            CHECK(back.records[e].logcosh == trace.records[e].logcosh);
        }
    }

    TEST_CASE("barcode csv round trip") {
        const auto bc = lower_star_barcode(std::vector<double>{0.0, 2.0, 1.0, 3.0});
        std::ostringstream out;
        write_barcode_csv(out, bc);
        std::istringstream in(out.str());
        const auto back = read_barcode_csv(in);
        REQUIRE(back.size() == bc.size());
        for (std::size_t i = 0; i < bc.size(); ++i) {
            CHECK(back.bars[i].birth == bc.bars[i].birth);
            CHECK(back.bars[i].death == bc.bars[i].death);
            CHECK(back.bars[i].essential == bc.bars[i].essential);
        }
    }

    TEST_CASE("model json round trip") {
        const BaseConfiguration cfg({-1.0, 0.1, 1.0 / 3.0, 2.0}, {0.2, -5e-10, 7.0, 1e300});
        const auto text = model_to_json(cfg);
        CHECK(model_from_json(text) == cfg);
        CHECK(model_to_json(model_from_json(text)) == text);
        CHECK_THROWS_AS(model_from_json("{\"xs\": [0, 1]}"), InputError);
        CHECK_THROWS_AS(model_from_json("not json"), InputError);
        CHECK_THROWS_AS(model_from_json("{\"xs\": [1, 0], \"ys\": [0, 0]}"), InputError);
    }

    TEST_CASE("text files") {
        const auto path = std::filesystem::temp_directory_path() / "bnnfit_io_text_test.txt";
        write_text_file(path, "a\nb\n");
        CHECK(read_text_file(path) == "a\nb\n");
        std::filesystem::remove(path);
    }
}
