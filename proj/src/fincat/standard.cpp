#include "orbifunctor/fincat/standard.hpp"

#include "orbifunctor/error.hpp"

namespace orbifunctor {
namespace {

// Ids run over m, then n ≥ m, then i ≤ n − m (a single i = 0 for N).
MorphismId encode(IndexKind kind, std::size_t k, std::size_t m, std::size_t n, std::size_t i)
{
    MorphismId id = 0;
    for (std::size_t a = 0; a <= k; ++a)
        for (std::size_t b = a; b <= k; ++b) {
            const std::size_t width = kind == IndexKind::N ? 1 : b - a + 1;
            if (a == m && b == n)
                return id + i;
            id += width;
        }
    return kNone;
}

} // namespace

std::string to_string(IndexKind k)
{
    return k == IndexKind::N ? "N" : "RF";
}

IndexKind index_kind_from_string(const std::string& s)
{
    if (s == "N")
        return IndexKind::N;
    if (s == "RF")
        return IndexKind::RF;
    throw InputError("unknown index category kind '" + s + "' (expected N or RF)");
}

MorphismId IndexCategory::morphism(std::size_t m, std::size_t n, std::size_t i) const
{
    if (m > n || n > truncation)
        return kNone;
    if (kind == IndexKind::N)
        return encode(kind, truncation, m, n, 0);
    if (i > n - m)
        return kNone;
    return encode(kind, truncation, m, n, i);
}

std::pair<std::size_t, std::size_t> IndexCategory::steps(MorphismId f) const
{
    const auto& mor = category->morphism(f);
    const std::size_t len = mor.cod - mor.dom;
    if (kind == IndexKind::N)
        return {len, 0};
    const std::size_t i = f - encode(kind, truncation, mor.dom, mor.cod, 0);
    return {i, len - i};
}

IndexCategory standard_category(IndexKind kind, std::size_t k)
{
    std::vector<std::string> objects;
    for (std::size_t n = 0; n <= k; ++n)
        objects.push_back(std::to_string(n));
    std::vector<Morphism> mors;
    std::vector<MorphismId> ids(k + 1);
    struct Info {
        std::size_t m, n, i;
    };
    std::vector<Info> info;
    for (std::size_t m = 0; m <= k; ++m)
        for (std::size_t n = m; n <= k; ++n) {
            const std::size_t width = kind == IndexKind::N ? 1 : n - m + 1;
            for (std::size_t i = 0; i < width; ++i) {
                if (m == n)
                    ids[m] = mors.size();
                std::string name = kind == IndexKind::N
                                       ? std::to_string(m) + "≤" + std::to_string(n)
                                       : "(" + std::to_string(i) + "," + std::to_string(n - m - i) + "):" +
                                             std::to_string(m) + "→" + std::to_string(n);
                mors.push_back({m, n, std::move(name)});
                info.push_back({m, n, i});
            }
        }
    auto rule = [&](MorphismId second, MorphismId first) {
        const Info& a = info[first];
        const Info& b = info[second];
        return encode(kind, k, a.m, b.n, kind == IndexKind::N ? 0 : a.i + b.i);
    };
    IndexCategory ic;
    ic.kind = kind;
    ic.truncation = k;
    ic.category = std::make_shared<FinCategory>(FinCategory::from_rule(objects, std::move(mors), ids, rule));
    return ic;
}

} // namespace orbifunctor
