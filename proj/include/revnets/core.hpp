#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revnets {

using Id = std::string;
using IdSet = std::set<Id>;
using Pair = std::pair<Id, Id>;
using Rel = std::set<Pair>;
using Multiset = std::map<Id, int>;

inline constexpr std::size_t kDefaultBound = 1'000'000;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BoundExceeded : public Error {
public:
    BoundExceeded(std::size_t bound, std::size_t frontier)
        : Error("exploration bound " + std::to_string(bound) + " exceeded (frontier " +
                std::to_string(frontier) + ")"),
          bound_(bound), frontier_(frontier) {}
    [[nodiscard]] std::size_t bound() const { return bound_; }
    [[nodiscard]] std::size_t frontier() const { return frontier_; }

private:
    std::size_t bound_;
    std::size_t frontier_;
};

struct Violation {
    std::string condition;
    std::vector<Id> witness;
    std::string text;

    bool operator==(const Violation&) const = default;
};

struct Report {
    std::vector<Violation> violations;
    std::vector<std::string> notes;

    [[nodiscard]] bool pass() const { return violations.empty(); }

    void fail(std::string condition, std::vector<Id> witness, std::string text) {
        violations.push_back({std::move(condition), std::move(witness), std::move(text)});
    }

    void note(std::string text) { notes.push_back(std::move(text)); }

    [[nodiscard]] bool has(const std::string& condition) const {
        return std::any_of(violations.begin(), violations.end(),
                           [&](const Violation& v) { return v.condition == condition; });
    }

    [[nodiscard]] const Violation* find(const std::string& condition) const {
        for (const auto& v : violations)
            if (v.condition == condition) return &v;
        return nullptr;
    }

    // Appends other's findings; condition ids get the prefix.
    void merge(const Report& other, const std::string& prefix = "") {
        for (const auto& v : other.violations)
            violations.push_back({prefix + v.condition, v.witness, v.text});
        for (const auto& n : other.notes) notes.push_back(n);
    }
};

template <class T>
[[nodiscard]] bool subset(const std::set<T>& a, const std::set<T>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

template <class T>
[[nodiscard]] std::set<T> unite(std::set<T> a, const std::set<T>& b) {
    a.insert(b.begin(), b.end());
    return a;
}

template <class T>
[[nodiscard]] std::set<T> intersect(const std::set<T>& a, const std::set<T>& b) {
    std::set<T> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

template <class T>
[[nodiscard]] std::set<T> minus(const std::set<T>& a, const std::set<T>& b) {
    std::set<T> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

template <class T>
[[nodiscard]] bool disjoint(const std::set<T>& a, const std::set<T>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return false;
    }
    return true;
}

[[nodiscard]] inline std::string join(const std::vector<Id>& xs, const std::string& sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

[[nodiscard]] inline std::string show(const IdSet& xs) {
    return "{" + join(std::vector<Id>(xs.begin(), xs.end())) + "}";
}

// Finite binary relations over identifiers.
namespace rel {

[[nodiscard]] inline Rel inverse(const Rel& r) {
    Rel out;
    for (const auto& [a, b] : r) out.insert({b, a});
    return out;
}

[[nodiscard]] inline Rel restrict(const Rel& r, const IdSet& dom) {
    Rel out;
    for (const auto& p : r)
        if (dom.count(p.first) && dom.count(p.second)) out.insert(p);
    return out;
}

[[nodiscard]] inline Rel compose(const Rel& r, const Rel& s) {
    std::map<Id, IdSet> succ;
    for (const auto& [a, b] : s) succ[a].insert(b);
    Rel out;
    for (const auto& [a, b] : r) {
        auto it = succ.find(b);
        if (it == succ.end()) continue;
        for (const auto& c : it->second) out.insert({a, c});
    }
    return out;
}

[[nodiscard]] inline IdSet image(const Rel& r, const Id& x) {
    IdSet out;
    for (auto it = r.lower_bound({x, Id{}}); it != r.end() && it->first == x; ++it)
        out.insert(it->second);
    return out;
}

[[nodiscard]] inline IdSet preimage(const Rel& r, const Id& y) {
    IdSet out;
    for (const auto& [a, b] : r)
        if (b == y) out.insert(a);
    return out;
}

[[nodiscard]] inline IdSet image(const Rel& r, const IdSet& xs) {
    IdSet out;
    for (const auto& x : xs) out.merge(image(r, x));
    return out;
}

[[nodiscard]] inline IdSet field(const Rel& r) {
    IdSet out;
    for (const auto& [a, b] : r) {
        out.insert(a);
        out.insert(b);
    }
    return out;
}

[[nodiscard]] inline Rel transitive_closure(const Rel& r) {
    std::map<Id, IdSet> succ;
    for (const auto& [a, b] : r) succ[a].insert(b);
    Rel out;
    for (const auto& [start, _] : succ) {
        std::vector<Id> stack(succ[start].begin(), succ[start].end());
        IdSet seen;
        while (!stack.empty()) {
            Id x = stack.back();
            stack.pop_back();
            if (!seen.insert(x).second) continue;
            out.insert({start, x});
            auto it = succ.find(x);
            if (it != succ.end())
                for (const auto& y : it->second) stack.push_back(y);
        }
    }
    return out;
}

// {y | y r* x}
[[nodiscard]] inline IdSet down(const Rel& r, const Id& x) {
    std::map<Id, IdSet> pred;
    for (const auto& [a, b] : r) pred[b].insert(a);
    IdSet seen{x};
    std::vector<Id> stack{x};
    while (!stack.empty()) {
        Id y = stack.back();
        stack.pop_back();
        auto it = pred.find(y);
        if (it == pred.end()) continue;
        for (const auto& z : it->second)
            if (seen.insert(z).second) stack.push_back(z);
    }
    return seen;
}

// A cycle of r (first node repeated at the end), if any.
[[nodiscard]] inline std::optional<std::vector<Id>> find_cycle(const Rel& r) {
    std::map<Id, IdSet> succ;
    for (const auto& [a, b] : r) succ[a].insert(b);
    std::map<Id, int> colour;  // 0 new, 1 on stack, 2 done
    std::vector<Id> path;
    std::optional<std::vector<Id>> found;
    std::function<bool(const Id&)> visit = [&](const Id& x) {
        colour[x] = 1;
        path.push_back(x);
        for (const auto& y : succ[x]) {
            if (colour[y] == 1) {
                auto from = std::find(path.begin(), path.end(), y);
                std::vector<Id> cyc(from, path.end());
                cyc.push_back(y);
                found = cyc;
                return true;
            }
            if (colour[y] == 0 && visit(y)) return true;
        }
        path.pop_back();
        colour[x] = 2;
        return false;
    };
    for (const auto& [x, _] : succ)
        if (colour[x] == 0 && visit(x)) return found;
    return std::nullopt;
}

[[nodiscard]] inline bool acyclic(const Rel& r) { return !find_cycle(r).has_value(); }

[[nodiscard]] inline bool irreflexive(const Rel& r) {
    return std::none_of(r.begin(), r.end(), [](const Pair& p) { return p.first == p.second; });
}

[[nodiscard]] inline bool transitive(const Rel& r) { return subset(compose(r, r), r); }

[[nodiscard]] inline Rel symmetric_part(const Rel& r) {
    Rel out;
    for (const auto& [a, b] : r)
        if (r.count({b, a})) out.insert({a, b});
    return out;
}

}  // namespace rel

}  // namespace revnets
