#include <gtest/gtest.h>

#include "tanglesim/node_mode.hpp"

namespace tanglesim {
namespace {

TEST(NodeMode, ParseAndFormatRoundTrip) {
  for (const char* text :
       {"inactive", "content:0.5", "content:0.25", "best_effort", "spammer:10", "multirate"}) {
    EXPECT_EQ(format_mode(parse_mode(text)), text);
  }
  EXPECT_EQ(format_mode(parse_mode("content")), "content:0.5");
  EXPECT_EQ(format_mode(parse_mode("spammer")), "spammer:10");
}

TEST(NodeMode, Labels) {
  EXPECT_EQ(mode_label(Content{}), "content");
  EXPECT_EQ(mode_label(MaliciousSpammer{}), "spammer");
  EXPECT_TRUE(is_malicious(MaliciousMultiRate{}));
  EXPECT_TRUE(is_malicious(MaliciousSpammer{}));
  EXPECT_FALSE(is_malicious(BestEffort{}));
  EXPECT_FALSE(is_malicious(Inactive{}));
}

TEST(NodeMode, ParseErrors) {
  for (const char* text : {"honest", "content:0", "content:1.5", "content:x", "spammer:1",
                           "best_effort:2", "inactive:", ""}) {
    EXPECT_THROW((void)parse_mode(text), std::invalid_argument) << text;
  }
}

}  // namespace
}  // namespace tanglesim
