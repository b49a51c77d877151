#include "sharp/corpus.hpp"

#include "sharp/textio.hpp"

namespace sharp::corpus {

const std::map<int, std::vector<std::string>>& sharp_odd_classes() {
    static const std::map<int, std::vector<std::string>> table = {
        {1, {"x + y"}},
        {3, {"x^3 + 3xy + y^3"}},
        {5, {"x^5 + 5x^3y + 5xy^2 + y^5"}},
        {7,
         {"x^7 + 7x^5y + 14x^3y^2 + 7xy^3 + y^7",
          "x^7 + 7x^3y + 7x^3y^3 + 7xy^3 + y^7",
          "x^7 + 7/2x^5y + 7/2xy + 7/2xy^5 + y^7"}},
        {9, {"x^9 + 9x^7y + 27x^5y^2 + 30x^3y^3 + 9xy^4 + y^9"}},
        {11,
         {"x^11 + 11x^9y + 44x^7y^2 + 77x^5y^3 + 55x^3y^4 + 11xy^5 + y^11",
          "x^11 + 11x^5y + 11x^5y^5 + 55x^4y^3 + 55x^3y^5 + 11xy^5 + y^11"}},
        {13,
         {"x^13 + 13x^11y + 65x^9y^2 + 156x^7y^3 + 182x^5y^4 + 91x^3y^5 + 13xy^6 + y^13",
          "x^13 + 13x^11y + 65x^9y^2 + 221/2x^7y^3 + 91/2x^3y^3 + 91/2x^3y^7 + 13xy^6 + y^13",
          "x^13 + 234/25x^11y + 143/5x^8y^2 + 143/5x^7y^4 + 91/25xy + 143/25xy^6 + 91/25xy^11 + "
          "y^13",
          "x^13 + 234/25x^11y + 143/5x^9y^2 + 143/5x^7y^3 + 91/25xy + 143/25xy^6 + 91/25xy^11 + "
          "y^13"}},
        {15,
         {"x^15 + 15x^13y + 90x^11y^2 + 275x^9y^3 + 450x^7y^4 + 378x^5y^5 + 140x^3y^6 + 15xy^7 + "
          "y^15",
          "x^15 + 140x^9y^3 + 15x^7y + 420x^7y^4 + 15x^7y^7 + 378x^5y^5 + 140x^3y^6 + 15xy^7 + "
          "y^15"}},
        {17,
         {"x^17 + 17x^15y + 119x^13y^2 + 442x^11y^3 + 935x^9y^4 + 1122x^7y^5 + 714x^5y^6 + "
          "204x^3y^7 + 17xy^8 + y^17"}},
    };
    return table;
}

const std::vector<std::pair<int, int>>& raw_counts_odd() {
    // (degree, raw count), N = 2..10
    static const std::vector<std::pair<int, int>> counts = {
        {1, 1}, {3, 1}, {5, 2}, {7, 4}, {9, 2}, {11, 4}, {13, 8}, {15, 4}, {17, 2}};
    return counts;
}

const std::vector<std::pair<int, int>>& raw_counts_even() {
    static const std::vector<std::pair<int, int>> counts = {
        {2, 3}, {4, 4}, {6, 10}, {8, 24}, {10, 32}, {12, 56}};
    return counts;
}

const std::vector<std::pair<int, int>>& isolated_counts() {
    static const std::vector<std::pair<int, int>> counts = {{3, 11}, {5, 38}, {7, 88}, {9, 198}};
    return counts;
}

const std::vector<int>& substitution_failure_degrees() {
    static const std::vector<int> degrees = {1,  3,  5,  9,  17, 21,  33,  41,  45,  53, 69,
                                             77, 81, 93, 105, 113, 117, 125, 129, 141, 149};
    return degrees;
}

const std::vector<int>& uniqueness_holds_degrees() {
    static const std::vector<int> degrees = {1, 3, 5, 9, 17};
    return degrees;
}

const std::vector<Integer>& pell_prefix() {
    static const std::vector<Integer> seq = {Integer(7), Integer(97), Integer(1351),
                                             Integer(18817), Integer(262087)};
    return seq;
}

std::vector<BivariatePoly> parsed_classes(int d) {
    std::vector<BivariatePoly> out;
    auto it = sharp_odd_classes().find(d);
    if (it == sharp_odd_classes().end()) return out;
    for (const auto& s : it->second) out.push_back(canonical_form(parse_poly(s)));
    return out;
}

}  // namespace sharp::corpus
