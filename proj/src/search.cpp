#include "evendesign/search.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "evendesign/bounds.hpp"
#include "evendesign/construct.hpp"
#include "evendesign/errors.hpp"
#include "evendesign/identities.hpp"

namespace evendesign {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

struct Candidate {
    std::uint64_t a4 = kNone;
    std::vector<PointMask> lower; // sorted
    WordlengthPattern wlp;        // aberration objective only
};

struct Problem {
    int k = 0;
    int dim = 0;
    int n_tilde = 0;
    Objective objective = Objective::a4;
    Symmetry symmetry = Symmetry::frame;
    std::vector<PointMask> prefix;
    std::vector<PointMask> candidates;
    int free = 0;
    int required_rank = 0;

    std::vector<PointMask> points(const std::vector<PointMask>& lower) const
    {
        std::vector<PointMask> out;
        for (PointMask x : lower)
            out.push_back((PointMask{1} << dim) | x);
        return out;
    }
};

// Incremental dependent-quadruple counter.
class PairCounter {
public:
    explicit PairCounter(int dim) : pairs_(std::size_t{1} << dim, 0) {}

    std::uint64_t delta(PointMask x) const
    {
        std::uint64_t s = 0;
        for (PointMask c : set_)
            s += pairs_[x ^ c];
        return s / 3;
    }
    void push(PointMask x)
    {
        for (PointMask c : set_)
            ++pairs_[x ^ c];
        set_.push_back(x);
    }
    void pop()
    {
        const PointMask x = set_.back();
        set_.pop_back();
        for (PointMask c : set_)
            --pairs_[x ^ c];
    }
    const std::vector<PointMask>& set() const { return set_; }

private:
    std::vector<std::uint32_t> pairs_;
    std::vector<PointMask> set_;
};

bool better(const Candidate& a, const Candidate& b, Objective objective)
{
    if (b.a4 == kNone)
        return a.a4 != kNone;
    if (a.a4 == kNone)
        return false;
    if (a.a4 != b.a4)
        return a.a4 < b.a4;
    if (objective == Objective::aberration) {
        const int c = compare_aberration(a.wlp, b.wlp);
        if (c != 0)
            return c < 0;
    }
    return a.lower < b.lower;
}

Candidate make_candidate(const Problem& p, std::uint64_t a4, std::vector<PointMask> lower)
{
    Candidate c;
    c.a4 = a4;
    std::sort(lower.begin(), lower.end());
    c.lower = std::move(lower);
    if (p.objective == Objective::aberration)
        c.wlp = wordlength_pattern(DesignSpec(p.k, p.points(c.lower)));
    return c;
}

Problem make_problem(int k, int n_tilde, Objective objective, Symmetry symmetry)
{
    if (k < 3 || k > kMaxSearchRunExponent)
        throw DomainError("search supports 3 <= k <= " + std::to_string(kMaxSearchRunExponent));
    Problem p;
    p.k = k;
    p.dim = k - 1;
    p.n_tilde = n_tilde;
    p.objective = objective;
    p.symmetry = symmetry;
    const PointMask universe = PointMask{1} << p.dim;
    if (n_tilde < 0 || n_tilde > static_cast<int>(universe))
        throw DomainError("n_tilde must lie in 0..2^(k-1)");
    p.required_rank = n_tilde == 0 ? -1 : std::min(n_tilde - 1, p.dim);
    if (n_tilde > 0) {
        if (symmetry == Symmetry::translation) {
            p.prefix = {0};
        } else if (symmetry == Symmetry::frame) {
            p.prefix = {0};
            for (int i = 0; i < std::min(n_tilde, k) - 1; ++i)
                p.prefix.push_back(PointMask{1} << i);
        }
    }
    std::unordered_set<PointMask> fixed(p.prefix.begin(), p.prefix.end());
    for (PointMask x = 0; x < universe; ++x)
        if (!fixed.count(x))
            p.candidates.push_back(x);
    p.free = n_tilde - static_cast<int>(p.prefix.size());
    return p;
}

// Greedy completion from the prefix: smallest increase, lowest value on ties.
std::optional<Candidate> greedy(const Problem& p, std::uint64_t& nodes)
{
    PairCounter counter(p.dim);
    std::uint64_t a4 = 0;
    for (PointMask x : p.prefix) {
        a4 += counter.delta(x);
        counter.push(x);
    }
    std::vector<bool> used(std::size_t{1} << p.dim, false);
    for (PointMask x : p.prefix)
        used[x] = true;
    for (int step = 0; step < p.free; ++step) {
        std::uint64_t best = kNone;
        PointMask pick = 0;
        for (PointMask x : p.candidates) {
            if (used[x])
                continue;
            ++nodes;
            const std::uint64_t d = counter.delta(x);
            if (d < best) {
                best = d;
                pick = x;
            }
        }
        used[pick] = true;
        a4 += best;
        counter.push(pick);
    }
    if (affine_rank(counter.set()) != p.required_rank)
        return std::nullopt;
    return make_candidate(p, a4, counter.set());
}

struct Shared {
    std::atomic<std::uint64_t> incumbent{kNone};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> aborted{false};
    std::uint64_t budget = 0;
};

class BranchSearch {
public:
    BranchSearch(const Problem& p, Shared& shared) : p_(p), shared_(shared), counter_(p.dim) {}

    // Explores every completion whose first free pick is candidates[first].
    Candidate run(std::size_t first)
    {
        best_ = Candidate{};
        std::uint64_t a4 = 0;
        for (PointMask x : p_.prefix) {
            a4 += counter_.delta(x);
            counter_.push(x);
        }
        extend(first, a4, 1);
        while (!counter_.set().empty())
            counter_.pop();
        return best_;
    }

private:
    void extend(std::size_t index, std::uint64_t a4, int depth)
    {
        if (shared_.aborted.load(std::memory_order_relaxed))
            return;
        const PointMask x = p_.candidates[index];
        const std::uint64_t total = a4 + counter_.delta(x);
        const std::uint64_t seen = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (shared_.budget && seen > shared_.budget) {
            shared_.aborted.store(true);
            return;
        }
        if (total > shared_.incumbent.load(std::memory_order_relaxed))
            return;
        counter_.push(x);
        if (depth == p_.free) {
            leaf(total);
        } else {
            const std::size_t last = p_.candidates.size() - static_cast<std::size_t>(p_.free - depth);
            for (std::size_t next = index + 1; next <= last; ++next)
                extend(next, total, depth + 1);
        }
        counter_.pop();
    }

    void leaf(std::uint64_t a4)
    {
        if (p_.symmetry != Symmetry::frame && affine_rank(counter_.set()) != p_.required_rank)
            return;
        if (best_.a4 != kNone && a4 > best_.a4)
            return;
        Candidate c = make_candidate(p_, a4, counter_.set());
        if (!better(c, best_, p_.objective))
            return;
        best_ = std::move(c);
        std::uint64_t cur = shared_.incumbent.load();
        while (a4 < cur && !shared_.incumbent.compare_exchange_weak(cur, a4)) {
        }
    }

    const Problem& p_;
    Shared& shared_;
    PairCounter counter_;
    Candidate best_;
};

std::string checkpoint_header(const Problem& p)
{
    std::ostringstream os;
    os << "# evendesign-checkpoint v1 k=" << p.k << " n_tilde=" << p.n_tilde << " symmetry=" << to_string(p.symmetry)
       << " objective=" << (p.objective == Objective::a4 ? "a4" : "aberration");
    return os.str();
}

// Completed branches: "branch <index> <a4 or -> <lower parts...>".
std::vector<std::optional<Candidate>> load_checkpoint(const Problem& p, const std::string& path, std::size_t branches)
{
    std::vector<std::optional<Candidate>> done(branches);
    std::ifstream in(path);
    if (!in)
        return done;
    std::string line;
    if (!std::getline(in, line))
        return done;
    if (line != checkpoint_header(p))
        throw ConfigError("checkpoint " + path + " belongs to a different search");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream is(line);
        std::string tag, a4;
        std::size_t index = 0;
        if (!(is >> tag >> index >> a4) || tag != "branch" || index >= branches)
            throw ConfigError("malformed checkpoint line: " + line);
        Candidate c;
        if (a4 != "-") {
            std::vector<PointMask> lower;
            PointMask x = 0;
            while (is >> x)
                lower.push_back(x);
            c = make_candidate(p, std::stoull(a4), lower);
            if (count_dependent_quadruples(c.lower) != c.a4)
                throw ConfigError("checkpoint witness does not match its recorded A_4: " + line);
        }
        done[index] = std::move(c);
    }
    return done;
}

std::string checkpoint_line(std::size_t index, const Candidate& c)
{
    std::ostringstream os;
    os << "branch " << index << ' ';
    if (c.a4 == kNone) {
        os << '-';
    } else {
        os << c.a4;
        for (PointMask x : c.lower)
            os << ' ' << x;
    }
    return os.str();
}

SearchReport run_search(const Problem& p, const SearchOptions& options)
{
    SearchReport rep;
    rep.k = p.k;
    rep.n_tilde = p.n_tilde;
    rep.objective = p.objective;
    rep.symmetry = p.symmetry;
    rep.threads = options.threads > 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());

    std::uint64_t greedy_nodes = 0;
    Candidate best;
    if (auto g = greedy(p, greedy_nodes))
        best = std::move(*g);

    Shared shared;
    shared.budget = options.node_budget;
    shared.nodes = greedy_nodes;
    shared.incumbent = best.a4;

    const bool floor_reached = p.objective == Objective::a4 && best.a4 == 0;
    const std::size_t branches =
        (p.free <= 0 || floor_reached) ? 0 : p.candidates.size() - static_cast<std::size_t>(p.free) + 1;
    rep.branches_total = static_cast<int>(branches);

    std::vector<std::optional<Candidate>> results(branches);
    std::ofstream checkpoint;
    if (!options.checkpoint_path.empty() && branches > 0) {
        results = load_checkpoint(p, options.checkpoint_path, branches);
        for (const auto& r : results)
            if (r) {
                ++rep.branches_resumed;
                if (r->a4 < shared.incumbent)
                    shared.incumbent = r->a4;
            }
        const bool fresh = rep.branches_resumed == 0;
        checkpoint.open(options.checkpoint_path, fresh ? std::ios::trunc : std::ios::app);
        if (!checkpoint)
            throw ResourceError("cannot write checkpoint " + options.checkpoint_path);
        if (fresh)
            checkpoint << checkpoint_header(p) << '\n' << std::flush;
    }

    std::atomic<std::size_t> next{0};
    std::mutex io_mutex;
    Candidate interrupted; // best leaf of branches cut short by the budget
    const auto worker = [&] {
        BranchSearch search(p, shared);
        while (true) {
            const std::size_t b = next.fetch_add(1);
            if (b >= branches)
                return;
            if (results[b])
                continue;
            Candidate c = search.run(b);
            std::lock_guard lock(io_mutex);
            if (shared.aborted.load()) {
                if (better(c, interrupted, p.objective))
                    interrupted = std::move(c);
                return;
            }
            if (checkpoint.is_open())
                checkpoint << checkpoint_line(b, c) << '\n' << std::flush;
            results[b] = std::move(c);
        }
    };
    const int nthreads = std::max(1, std::min<int>(rep.threads, static_cast<int>(std::max<std::size_t>(branches, 1))));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    for (const auto& r : results)
        if (r && better(*r, best, p.objective))
            best = *r;
    if (better(interrupted, best, p.objective))
        best = interrupted;

    rep.nodes_explored = shared.nodes.load();
    rep.exhaustive = !shared.aborted.load();
    if (best.a4 == kNone)
        throw ResourceError("search budget exhausted before any complement of maximum rank was found");

    rep.min_a4_tilde = best.a4;
    rep.witness = DesignSpec(p.k, p.points(best.lower), "search-k" + std::to_string(p.k) + "-nt" +
                                                            std::to_string(p.n_tilde));
    rep.tilde_wlp = wordlength_pattern(rep.witness);
    if (rep.tilde_wlp.at(4) != rep.min_a4_tilde)
        throw InvariantViolation("witness A_4 disagrees with the incremental count");
    const int n = (1 << (p.k - 1)) - p.n_tilde;
    rep.full_wlp = wlp_from_complement(n, p.k, rep.tilde_wlp);
    if (n >= 4 && Rational(BigInt(rep.full_wlp.at(4) - rep.min_a4_tilde)) != a4_offset(n, p.k))
        throw InvariantViolation("full-design A_4 does not match the offset identity");
    return rep;
}

} // namespace

std::string to_string(Symmetry s)
{
    switch (s) {
    case Symmetry::none:
        return "none";
    case Symmetry::translation:
        return "translation";
    case Symmetry::frame:
        return "frame";
    }
    return "unknown";
}

Symmetry parse_symmetry(const std::string& name)
{
    for (Symmetry s : {Symmetry::none, Symmetry::translation, Symmetry::frame})
        if (to_string(s) == name)
            return s;
    throw ConfigError("unknown symmetry mode '" + name + "'");
}

SearchReport min_a4(int k, int n_tilde, const SearchOptions& options)
{
    return run_search(make_problem(k, n_tilde, Objective::a4, options.symmetry), options);
}

SearchReport ma_search(int k, int n, const SearchOptions& options)
{
    if (k < 3 || k > kMaxSearchRunExponent)
        throw DomainError("search supports 3 <= k <= " + std::to_string(kMaxSearchRunExponent));
    if (!in_complement_regime(n, k))
        throw DomainError("minimum aberration via complements requires 5N/16 < n < N/2");
    const int n_tilde = (1 << (k - 1)) - n;
    return run_search(make_problem(k, n_tilde, Objective::aberration, options.symmetry), options);
}

std::uint64_t count_dependent_quadruples(const std::vector<PointMask>& lower)
{
    return zero_sum_quadruples(lower);
}

std::uint64_t count_dependent_quadruples_direct(std::vector<PointMask> lower)
{
    std::sort(lower.begin(), lower.end());
    std::unordered_set<PointMask> members(lower.begin(), lower.end());
    std::uint64_t count = 0;
    const std::size_t n = lower.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                const PointMask d = lower[a] ^ lower[b] ^ lower[c];
                if (d > lower[c] && members.count(d))
                    ++count;
            }
    return count;
}

int affine_rank(const std::vector<PointMask>& lower)
{
    if (lower.empty())
        return -1;
    std::vector<std::uint32_t> diffs;
    for (std::size_t i = 1; i < lower.size(); ++i)
        diffs.push_back(lower[i] ^ lower[0]);
    return rank_of_points(diffs);
}

} // namespace evendesign
