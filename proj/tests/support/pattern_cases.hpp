#ifndef NCHARVEST_TESTS_PATTERN_CASES_HPP
#define NCHARVEST_TESTS_PATTERN_CASES_HPP

// Hand-traced extraction cases: the head is the second token, the modifier
// the last token. `expected` is "verb/voice/preposition" or "" for none.

#include <array>
#include <string_view>

namespace pattern_cases {

struct Case {
    std::string_view sentence;
    std::string_view expected;
};

inline constexpr std::array<Case, 22> kCases{{
    {"the juice that is squeezed from oranges", "squeeze/passive/from"},
    {"the juice that might be made of ripe oranges", "make/passive/of"},
    {"the juice that people say is made of oranges", ""},
    {"the bar that contains chocolate", "contain/active/-"},
    {"the bars that have been made up of chocolate", "make/passive/up of"},
    {"the juice that tastes like oranges", "taste/active/like"},
    {"the juice that is orange", ""},
    {"the cake that contains and is made of almonds", ""},
    {"the soup that contained the onions", "contain/active/-"},
    {"the team which consists mostly of soldiers", "consist/active/of"},
    {"the wall that was built using bricks", ""},
    {"the statue that was carved from wood", "carve/passive/from"},
    {"the juice that does not contain oranges", "contain/active/-"},
    {"the cake that has contained almonds", "contain/active/-"},
    {"the cake that has almonds", "have/active/-"},
    {"the juice , which was made from oranges", "make/passive/from"},
    {"the juice that is sold ; made of oranges", ""},
    {"the juice that was being made from oranges", "make/passive/from"},
    {"the bar that was made with dark chocolate", "make/passive/with"},
    {"the juice that is made of the freshest oranges", "make/passive/of"},
    {"the cake that is made in the village from almonds", ""},
    {"the soup that is hot and contains onions", ""},
}};

} // namespace pattern_cases

#endif
