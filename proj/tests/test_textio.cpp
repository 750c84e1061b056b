#include "maxeig/errors.hpp"
#include "maxeig/textio.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace maxeig;

namespace {

TridiagonalSystem system_from(const std::string& text)
{
    std::istringstream in(text);
    return parse_system(in);
}

Operator1D operator_from(const std::string& text)
{
    std::istringstream in(text);
    return parse_operator(in);
}

} // namespace

TEST(ParseNumberList, SeparatorsAndErrors)
{
    EXPECT_EQ(parse_number_list("1, 2 3,4\t5"), (std::vector<double>{1, 2, 3, 4, 5}));
    EXPECT_EQ(parse_number_list("  "), std::vector<double>{});
    EXPECT_EQ(parse_number_list("-1.5e2 +3"), (std::vector<double>{-150, 3}));
    EXPECT_THROW(parse_number_list("1 two 3"), ParseError);
    EXPECT_THROW(parse_number_list("1e999"), ParseError);
    EXPECT_THROW(parse_number_list("nan"), ParseError);
}

TEST(ParseSystem, SquareModelFile)
{
    const TridiagonalSystem q = system_from("# square model, N = 7\n"
                                            "a: 1, 4, 9, 16, 25, 36, 49\n"
                                            "\n"
                                            "b = 1 4 9 16 25 36 49   # same as a\n"
                                            "c: 0 0 0 0 0 0 0 64\n");
    ASSERT_EQ(q.size(), 8u);
    EXPECT_EQ(q.diagonal(7), -113.0);
}

TEST(ParseSystem, OneByOneAndOrder)
{
    const TridiagonalSystem q = system_from("c: 5\na:\nb:\n");
    EXPECT_EQ(q.size(), 1u);
    EXPECT_EQ(q.killing(0), 5.0);
}

TEST(ParseSystem, Errors)
{
    EXPECT_THROW(system_from("a: 1\nb: 1\n"), ParseError);
    EXPECT_THROW(system_from("a: 1\nb: 1\nc: 0 1\nc: 0 1\n"), ParseError);
    EXPECT_THROW(system_from("a: 1\nb: 1\nd: 0 1\n"), ParseError);
    EXPECT_THROW(system_from("a: 1\nb: 1\nc: 0\n"), ParseError);
    EXPECT_THROW(system_from("a: -1\nb: 1\nc: 0 1\n"), ParseError);
    EXPECT_THROW(system_from("a: 1\nb: x\nc: 0 1\n"), ParseError);
    EXPECT_THROW(parse_system_file("/nonexistent/system.txt"), ParseError);
}

TEST(ParseDense, RowsAndSemicolons)
{
    const DenseMatrix m = parse_dense_text("0.25 0.14\n0.40, 0.12\n");
    EXPECT_EQ(m.order(), 2u);
    EXPECT_EQ(m(1, 0), 0.40);
    const DenseMatrix s = parse_dense_text("1 2; 3 4 # inline");
    EXPECT_EQ(s(1, 1), 4.0);
    EXPECT_THROW(parse_dense_text("1 2\n3\n"), ParseError);
    EXPECT_THROW(parse_dense_text("1 q\n3 4\n"), ParseError);
}

TEST(ParseFunction, Families)
{
    EXPECT_EQ(parse_function("constant 2.5")(7.0), 2.5);
    EXPECT_EQ(parse_function("linear 1 -2")(3.0), -5.0);
    EXPECT_DOUBLE_EQ(parse_function("power 2 1.5")(4.0), 16.0);
    EXPECT_EQ(parse_function("gaussian-drift 3")(2.0), -6.0);
    const RealFunction t = parse_function("table 0 1, 1 3, 2 2");
    EXPECT_EQ(t(-1.0), 1.0);
    EXPECT_EQ(t(0.5), 2.0);
    EXPECT_EQ(t(1.5), 2.5);
    EXPECT_EQ(t(5.0), 2.0);
    EXPECT_THROW(parse_function("constant"), ParseError);
    EXPECT_THROW(parse_function("linear 1"), ParseError);
    EXPECT_THROW(parse_function("table 0 1"), ParseError);
    EXPECT_THROW(parse_function("table 1 1 0 2"), ParseError);
    EXPECT_THROW(parse_function("spline 1 2"), ParseError);
    EXPECT_THROW(parse_function(""), ParseError);
}

TEST(ParseOperator, FullFile)
{
    const Operator1D op = operator_from("interval: -4 4\n"
                                        "theta: 0\n"
                                        "a: constant 1\n"
                                        "b: gaussian-drift 1\n"
                                        "c: constant 0\n"
                                        "h: constant 1\n"
                                        "truncated: left right\n");
    EXPECT_EQ(op.left, -4.0);
    EXPECT_EQ(op.right, 4.0);
    EXPECT_EQ(op.theta, 0.0);
    EXPECT_EQ(op.b(2.0), -2.0);
    EXPECT_TRUE(op.left_truncated);
    EXPECT_TRUE(op.right_truncated);
    ASSERT_TRUE(static_cast<bool>(op.h));
}

TEST(ParseOperator, DefaultsAndErrors)
{
    const Operator1D op = operator_from("interval: 1 2\na: constant 1\nb: constant 0\n");
    EXPECT_EQ(op.theta, 1.0);
    EXPECT_FALSE(static_cast<bool>(op.c));
    EXPECT_THROW(operator_from("a: constant 1\nb: constant 0\n"), ParseError);
    EXPECT_THROW(operator_from("interval: 2 1\na: constant 1\nb: constant 0\n"), ParseError);
    EXPECT_THROW(operator_from("interval: 0 1\na: constant 1\nb: constant 0\nfoo: 1\n"), ParseError);
    EXPECT_THROW(operator_from("interval: 0 1\na: constant 1\nb: constant 0\ntruncated: middle\n"), ParseError);
    EXPECT_THROW(operator_from("interval 0 1\n"), ParseError);
}
