#include <gtest/gtest.h>

#include <string>

#include "conekit/io.hpp"
#include "conekit/random.hpp"
#include "test_support.hpp"

namespace conekit {
namespace {

using testing::fin;

TEST(SampledFunctionJson, Layout) {
  EXPECT_EQ(to_json(fin({1, 2})).dump(), R"({"domain":{"kind":"finite","size":2},"values":[1.0,2.0]})");
  const auto g = SampledFunction::zero(Domain::grid(2, 0.5));
  EXPECT_EQ(to_json(g).dump(), R"({"domain":{"kind":"grid","size":2,"endpoint":0.5},"values":[0.0,0.0]})");
}

TEST(SampledFunctionJson, RoundTripIsExact) {
  for (std::size_t t = 0; t < 100; ++t) {
    auto rng = trial_stream(13, t);
    const Domain d = t % 2 ? Domain::finite(1 + rng.index(0, 9)) : Domain::grid(2 + rng.index(0, 9), rng.uniform(0.1, 9));
    const auto f = random_cone_function(d, rng, -1e6, 1e6);
    EXPECT_EQ(parse_sampled_function(to_json(f).dump()), f);
  }
}

TEST(SampledFunctionJson, ParseErrorsNameTheField) {
  try {
    parse_sampled_function(R"({"domain":{"kind":"finite","size":2},"values":[1,"x"]})", "f.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), "f.json.values[1]");
  }
  EXPECT_THROW(parse_sampled_function(R"({"values":[1]})"), ParseError);
  EXPECT_THROW(parse_sampled_function(R"({"domain":{"kind":"blob","size":1},"values":[1]})"), ParseError);
  EXPECT_THROW(parse_sampled_function(R"({"domain":{"kind":"finite","size":2},"values":[1]})"), ParseError);
  EXPECT_THROW(parse_sampled_function(R"({"domain":{"kind":"grid","size":2},"values":[1,2]})"), ParseError);
  EXPECT_THROW(parse_sampled_function("{not json"), ParseError);
}

TEST(KernelCsv, ParsesSquareTable) {
  const auto k = parse_kernel_csv("1, 2\n3,4\n\n# trailing comment\n");
  EXPECT_EQ(k.size(), 2u);
  EXPECT_EQ(k(1, 0), 3.0);
  EXPECT_EQ(k(1, 1), 4.0);
}

TEST(KernelCsv, RaggedRowNamesLine) {
  try {
    parse_kernel_csv("1,2\n3\n", "k.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), "k.csv:2");
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
  }
}

TEST(KernelCsv, Rejects) {
  EXPECT_THROW(parse_kernel_csv("1,-2\n3,4\n"), ParseError);
  EXPECT_THROW(parse_kernel_csv("1,abc\n3,4\n"), ParseError);
  EXPECT_THROW(parse_kernel_csv("1,2\n"), ParseError);  // not square
  EXPECT_THROW(parse_kernel_csv(""), ParseError);
  EXPECT_THROW(parse_kernel_csv("1,,2\n"), ParseError);
}

TEST(ContinuousSpecJson, Generators) {
  const auto s = parse_continuous_spec(R"({"a":1,"n":11,"alpha_gen":"linear","beta_gen":"linear","kernel_gen":"product"})");
  EXPECT_EQ(s.size(), 11u);
  EXPECT_EQ(s.alpha(), SampledFunction::zero(s.grid()));
  EXPECT_EQ(s.beta()[10], 1.0);
  EXPECT_EQ(s.kernel(10, 10), 1.0);
  EXPECT_EQ(s.kernel(5, 2), s.grid().point(5) * s.grid().point(2));

  const auto c = parse_continuous_spec(
      R"({"a":2,"n":3,"alpha_gen":"const:0.5","beta_gen":"const:2","kernel_gen":"uniform_random:4:1:3"})");
  EXPECT_EQ(c.alpha()[1], 0.5);
  for (double v : c.kernel_table()) {
    EXPECT_GE(v, 1.0);
    EXPECT_LT(v, 3.0);
  }
}

TEST(ContinuousSpecJson, ExplicitArrays) {
  const auto s = parse_continuous_spec(
      R"({"a":1,"n":2,"alpha":[0,0],"beta":[1,1],"kernel":[[1,2],[3,4]]})");
  EXPECT_EQ(s.kernel(1, 0), 3.0);
}

TEST(ContinuousSpecJson, Errors) {
  EXPECT_THROW(parse_continuous_spec(R"({"a":1,"n":2,"alpha":[0,0],"beta":[1,1]})"), ParseError);
  EXPECT_THROW(parse_continuous_spec(R"({"a":1,"n":2,"alpha":[0.5,0],"beta":[0.2,1],"kernel":[[1,2],[3,4]]})"),
               ParseError);
  EXPECT_THROW(parse_continuous_spec(R"({"a":1,"n":2,"alpha_gen":"wiggly","beta":[1,1],"kernel":[[1,2],[3,4]]})"),
               ParseError);
  EXPECT_THROW(parse_continuous_spec(R"({"a":1,"n":2,"alpha":[0,0],"beta":[1,1],"kernel":[[1,2],[3]]})"),
               ParseError);
  EXPECT_THROW(parse_continuous_spec(R"({"a":-1,"n":2,"alpha_gen":"linear","beta_gen":"linear","kernel_gen":"product"})"),
               ParseError);
}

TEST(FiniteKernelGenerator, Names) {
  EXPECT_EQ(generate_finite_kernel("zero:3", 0).size(), 3u);
  EXPECT_EQ(generate_finite_kernel("identity", 0).size(), 4u);
  EXPECT_EQ(generate_finite_kernel("random:5", 9).entries().size(), 25u);
  const auto u = generate_finite_kernel("uniform_random:1:2:3:2", 0);
  EXPECT_EQ(u.size(), 2u);
  for (double v : u.entries()) EXPECT_GE(v, 2.0);
  EXPECT_THROW(generate_finite_kernel("random:x", 0), ParseError);
  EXPECT_THROW(generate_finite_kernel("weird", 0), ParseError);
}

TEST(ReportJson, Fields) {
  PropertyReport r;
  r.property = "monotone";
  r.passed = false;
  r.trials = 3;
  r.worst_violation = 0.5;
  r.witness = Witness{{fin({1})}, {2.0}};
  const auto j = to_json(r);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["witness"]["functions"][0]["values"][0], 1.0);
  EXPECT_EQ(j["witness"]["scalars"][0], 2.0);
}

}  // namespace
}  // namespace conekit
