#include <gtest/gtest.h>

#include "anosov/error.hpp"
#include "anosov/io.hpp"
#include "anosov/rational.hpp"

using namespace anosov;

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), mpq_class(3));
  EXPECT_EQ(parse_rational("1/2"), mpq_class(1, 2));
  EXPECT_EQ(parse_rational("-4/6"), mpq_class(-2, 3));
  for (const char* bad : {"", "1/0", "x", "1.5", "1/2/3"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(Rational, InverseAndDeterminant) {
  RationalMatrix m(3);
  const int entries[3][3] = {{-1, -2, 2}, {-2, -1, 2}, {-2, -2, 3}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = entries[i][j];
  EXPECT_EQ(m.determinant(), mpq_class(-1));
  EXPECT_TRUE(m * m.inverse() == RationalMatrix::identity(3));
  RationalMatrix singular(2);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(1, 0) = 2;
  singular(1, 1) = 4;
  EXPECT_THROW(singular.inverse(), Error);
}

TEST(Io, Fnv1aReferenceValues) {
  EXPECT_EQ(io::fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(io::fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(io::fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3, -2.5e-300, 12345.678}) EXPECT_EQ(std::stod(io::format_double(x)), x);
  EXPECT_EQ(io::format_double(-0.0), "0");
}

TEST(Io, CsvHasMetaLineAndHeader) {
  const std::string text = io::csv_text("seed=0", {"a", "b"}, {{"1", "2"}});
  EXPECT_EQ(text, "# seed=0\na,b\n1,2\n");
}

TEST(Io, ErrorCodesHaveNames) {
  EXPECT_EQ(to_string(ErrorCode::LpStall), "LpStall");
  const Error e(ErrorCode::ParseError, "bad");
  EXPECT_EQ(std::string(e.what()), "ParseError: bad");
}
