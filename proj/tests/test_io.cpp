#include <gtest/gtest.h>

#include <sstream>

#include "ecx/error.hpp"
#include "ecx/io.hpp"
#include "ecx/synthetic.hpp"

using namespace ecx;

namespace {

ErrorCode code_of(auto&& fn, std::string* message = nullptr) {
    try {
        fn();
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.code();
    }
    ADD_FAILURE() << "expected ecx::Error";
    return ErrorCode::IoError;
}

} // namespace

TEST(FlowsCsv, ParsesRecords) {
    std::istringstream in("\xEF\xBB\xBF" "country,product,value\nA,p1,10\n\"B, Inc\",p2,2.5e3\r\n\nA,p1,5\n");
    auto recs = io::read_flows_csv(in);
    ASSERT_EQ(recs.size(), 3u);
    EXPECT_EQ(recs[1].country, "B, Inc");
    EXPECT_EQ(recs[1].value, 2500.0);
    auto m = ingest_flows(recs);
    EXPECT_EQ(m.values()(0, 0), 15.0);
}

TEST(FlowsCsv, BadHeaderNamesExpectedHeader) {
    std::istringstream in("exporter,hs,usd\nA,p,1\n");
    std::string msg;
    EXPECT_EQ(code_of([&] { io::read_flows_csv(in); }, &msg), ErrorCode::ParseError);
    EXPECT_NE(msg.find("country,product,value"), std::string::npos);
}

TEST(FlowsCsv, ErrorsCarryLineNumbers) {
    std::string msg;
    std::istringstream bad("country,product,value\nA,p,1\nA,q,abc\n");
    EXPECT_EQ(code_of([&] { io::read_flows_csv(bad); }, &msg), ErrorCode::ParseError);
    EXPECT_NE(msg.find("line 3"), std::string::npos);

    std::istringstream neg("country,product,value\nA,p,-1\n");
    EXPECT_EQ(code_of([&] { io::read_flows_csv(neg); }, &msg), ErrorCode::NegativeValue);
    EXPECT_NE(msg.find("line 2"), std::string::npos);

    std::istringstream short_row("country,product,value\nA,p\n");
    EXPECT_EQ(code_of([&] { io::read_flows_csv(short_row); }), ErrorCode::ParseError);

    std::istringstream inf("country,product,value\nA,p,inf\n");
    EXPECT_EQ(code_of([&] { io::read_flows_csv(inf); }), ErrorCode::NonFiniteValue);
}

TEST(BaciCsv, SumsOverImporters) {
    std::istringstream in("t,i,j,k,v,q\n2010,276,156,010101,5.5,1\n2010,276,380,010101,4.5,2\n"
                          "2011,276,380,010101,100,2\n2010,156,276,020202,3,1\n");
    auto recs = io::read_baci_csv(in, std::string("2010"));
    ASSERT_EQ(recs.size(), 3u);
    auto m = ingest_flows(recs);
    EXPECT_EQ(m.countries(), (Labels{"156", "276"}));
    EXPECT_EQ(m.values()(1, 0), 10.0);
}

TEST(BaciCsv, MissingColumn) {
    std::istringstream in("t,i,k,q\n");
    EXPECT_EQ(code_of([&] { io::read_baci_csv(in); }), ErrorCode::ParseError);
}

TEST(MatrixJson, TripletsSortedAndRoundTrip) {
    auto m = ingest_flows({{"B", "q", 1}, {"A", "q", 2}, {"A", "p", 3}}, "USD");
    auto j = io::to_json(m);
    EXPECT_EQ(j["triplets"], io::json::parse("[[0,0,3.0],[0,1,2.0],[1,1,1.0]]"));
    EXPECT_EQ(j["unit"], "USD");
    for (const auto& x : sparse_corpus(10, 3, 0.5)) {
        const std::string text = io::to_json(x).dump();
        EXPECT_EQ(io::export_matrix_from_json(io::json::parse(text)), x);
    }
}

TEST(MatrixJson, RejectsBadIndex) {
    auto j = io::json::parse(R"({"countries":["A"],"products":["p"],"triplets":[[0,3,1.0]]})");
    EXPECT_EQ(code_of([&] { io::export_matrix_from_json(j); }), ErrorCode::ParseError);
}

TEST(TraceJson, Shape) {
    IterationTrace t;
    t.kept = {0, 1, 2};
    t.countries = {{1, 1}, {2, 3}, {4, 5}};
    t.products = {{1}, {1}, {1}};
    t.normalizers = {{1, 1}, {2, 2}, {3, 3}};
    t.iterations = 2;
    auto j = io::to_json(t, 2);
    EXPECT_EQ(j["iterations"], 2);
    EXPECT_EQ(j["kept_iterations"], io::json::parse("[0,2]"));
    EXPECT_EQ(j["F"].size(), 2u);
    EXPECT_EQ(j["converged"], false);
}

TEST(Numbers, FormatRoundTrips) {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.normal() * std::pow(10.0, rng.uniform(-300, 300));
        EXPECT_EQ(io::parse_double(io::format_double(v)), v);
    }
    EXPECT_EQ(io::parse_double(" +1.5 "), 1.5);
    EXPECT_THROW(io::parse_double("1.5x"), Error);
}

TEST(ScoreColumn, ByNameOrDefault) {
    const std::string csv = "country,fitness,log_fitness\nA,2,0.5\nB,1,nan\n";
    std::istringstream a(csv), b(csv);
    auto def = io::read_score_column(a);
    EXPECT_EQ(def.values, (Vector{2, 1}));
    auto named = io::read_score_column(b, "log_fitness");
    EXPECT_EQ(named.labels, (Labels{"A", "B"}));
    EXPECT_TRUE(std::isnan(named.values[1]));
    std::istringstream c(csv);
    EXPECT_EQ(code_of([&] { io::read_score_column(c, "nope"); }), ErrorCode::ParseError);
}

TEST(AlgoConfigText, ParsesAllKeys) {
    std::istringstream in("# reproduction setup\ninit = degree\nnormalization = geom\n"
                          "stop = rank-stable\nwindow = 7\ncheck_every = 2\nmax_iterations = 500\n"
                          "epsilon_floor = 1e-200\nkeep_every = 5\n");
    auto c = io::parse_algo_config(in);
    EXPECT_EQ(c.init, Init::Degree);
    EXPECT_EQ(c.normalization, Normalization::GeometricMean);
    ASSERT_TRUE(std::holds_alternative<RankStable>(c.stop));
    EXPECT_EQ(std::get<RankStable>(c.stop).window, 7u);
    EXPECT_EQ(std::get<RankStable>(c.stop).check_every, 2u);
    EXPECT_EQ(c.max_iterations, 500u);
    EXPECT_EQ(c.epsilon_floor, 1e-200);
    EXPECT_EQ(c.keep_every, 5u);

    auto again = io::algo_config_from_json(io::to_json(c));
    EXPECT_EQ(io::to_json(again), io::to_json(c));
}

TEST(AlgoConfigText, FixedIterations) {
    std::istringstream in("iterations = 1\ninit = degree\n");
    auto c = io::parse_algo_config(in);
    EXPECT_EQ(std::get<FixedIterations>(c.stop).count, 1u);
}

TEST(AlgoConfigText, Errors) {
    std::string msg;
    std::istringstream unknown("init = ones\nspeed = 3\n");
    EXPECT_EQ(code_of([&] { io::parse_algo_config(unknown); }, &msg), ErrorCode::ParseError);
    EXPECT_NE(msg.find("line 2"), std::string::npos);
    std::istringstream bad_init("init = random\n");
    EXPECT_EQ(code_of([&] { io::parse_algo_config(bad_init); }), ErrorCode::ParseError);
    std::istringstream no_eq("init ones\n");
    EXPECT_EQ(code_of([&] { io::parse_algo_config(no_eq); }), ErrorCode::ParseError);
}
