#include <sstream>

#include <gtest/gtest.h>

#include <lieinv/io.hpp>
#include <lieinv/tensors.hpp>

using namespace lieinv;

namespace {

int parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_tensor(in);
  } catch (const ParseError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
  for (double v : {0.5, -1.0 / std::sqrt(3.0), 1e-300, 123456.789, -0.0}) {
    auto s = format_double(v);
    auto back = parse_double(s);
    ASSERT_TRUE(back.has_value()) << s;
    EXPECT_EQ(*back, v);
  }
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_FALSE(parse_double("0.5x").has_value());
  EXPECT_FALSE(parse_double("").has_value());
}

TEST(Radicals, RecognizeTableValues) {
  EXPECT_EQ(format_value(0.5, true), "1/2");
  EXPECT_EQ(format_value(-std::sqrt(3.0) / 6.0, true), "-sqrt(3)/6");
  EXPECT_EQ(format_value(1.0 / std::sqrt(3.0), true), "sqrt(3)/3");
  EXPECT_EQ(format_value(3.0 * std::sqrt(2.0) / 4.0, true), "3*sqrt(2)/4");
  EXPECT_EQ(format_value(-std::sqrt(6.0) / 9.0, true), "-sqrt(6)/9");
  EXPECT_EQ(format_value(2.0, true), "2");
  EXPECT_EQ(format_value(0.5, false), "0.5");
  EXPECT_FALSE(recognize_radical(std::acos(-1.0)).has_value());
  EXPECT_FALSE(recognize_radical(0.0).has_value());
}

TEST(Radicals, ParseInvertsFormat) {
  for (double v : {0.25, -std::sqrt(2.0) / 12.0, 5.0 * std::sqrt(6.0) / 7.0, -3.0}) {
    auto q = recognize_radical(v);
    ASSERT_TRUE(q.has_value());
    auto back = parse_radical(format_radical(*q));
    ASSERT_TRUE(back.has_value());
    EXPECT_NEAR(*back, v, 1e-15);
  }
  for (auto bad : {"", "sqrt3", "1/0", "2*", "sqrt(2", "1/2x", "--1"}) EXPECT_FALSE(parse_radical(bad).has_value()) << bad;
}

TEST(TensorFile, RoundTripIsByteIdentical) {
  auto g = build_algebra("su3");
  auto f = structure_constants(g);
  auto d = d_tensor(g);
  for (bool exact : {false, true}) {
    std::ostringstream a;
    write_tensor(a, d, "su(3)", exact);
    std::istringstream in(a.str());
    auto tf = read_tensor(in);
    EXPECT_EQ(tf.kind, Kind::sym);
    EXPECT_EQ(tf.algebra, "su(3)");
    EXPECT_EQ(tf.as_sym(), d);
    std::ostringstream b;
    write_tensor(b, tf.as_sym(), tf.algebra, exact);
    EXPECT_EQ(a.str(), b.str());
  }
  std::ostringstream a;
  write_tensor(a, f, "su(3)", true);
  std::istringstream in(a.str());
  auto tf = read_tensor(in);
  EXPECT_EQ(tf.as_alt(), f);
  EXPECT_THROW(tf.as_sym(), InvalidInput);
}

TEST(TensorFile, LayoutIsOneBasedAndSorted) {
  auto t = AltTensor::from_entries(2, 4, {{{2, 3}, -1.5}, {{0, 1}, 0.5}});
  std::ostringstream os;
  write_tensor(os, t, "test");
  EXPECT_EQ(os.str(), "kind=alt order=2 dim=4 algebra=test\n1 2 0.5\n3 4 -1.5\n");
}

TEST(TensorFile, ErrorsCarryLineNumbers) {
  const std::string h = "kind=alt order=2 dim=4 algebra=x\n";
  EXPECT_EQ(parse_error_line(""), 1);
  EXPECT_EQ(parse_error_line("kind=alt order=2 dim=4\n"), 1);
  EXPECT_EQ(parse_error_line("kind=alt kind=sym order=2 dim=4 algebra=x\n"), 1);
  EXPECT_EQ(parse_error_line("kind=foo order=2 dim=4 algebra=x\n"), 1);
  EXPECT_EQ(parse_error_line("kind=alt order=-2 dim=4 algebra=x\n"), 1);
  EXPECT_EQ(parse_error_line("order\n"), 1);
  EXPECT_EQ(parse_error_line(h + "1 2 0.5\n2 1 0.5\n"), 3);
  EXPECT_EQ(parse_error_line(h + "\n1 5 0.5\n"), 3);
  EXPECT_EQ(parse_error_line(h + "1 x 0.5\n"), 2);
  EXPECT_EQ(parse_error_line(h + "1 2\n"), 2);
  EXPECT_EQ(parse_error_line(h + "1 2 abc\n"), 2);
  EXPECT_EQ(parse_error_line(h + "1 2 0.5 1/3\n"), 2);
  EXPECT_EQ(parse_error_line(h + "1 2 0.5 1/2\n1 2 0.25\n"), 3);
  EXPECT_EQ(parse_error_line("kind=sym order=2 dim=4 algebra=x\n2 1 0.5\n"), 2);
  EXPECT_EQ(parse_error_line("kind=sym order=2 dim=4 algebra=x\n1 1 0.5\r\n\n"), -1);
}
