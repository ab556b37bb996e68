#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "netcorr/graph.hpp"
#include "netcorr/weights.hpp"

namespace netcorr {

/// Per-page measurements for one month.
struct PageRecord {
    std::string title; // canonical (underscore) form
    long long views = 0;
    std::optional<long long> watchers; // absent when privacy-suppressed
    long long length_bytes = 0;
    long long edits = 0;
};

/// Canonical page title: whitespace trimmed, spaces to single underscores,
/// first letter upper-cased (ASCII). Both "graph theory" and "Graph_theory"
/// map to "Graph_theory".
std::string canonical_title(const std::string& title);

/// Percent-encoding for URL path/query components.
std::string url_encode(const std::string& s);

/// One cached HTTP exchange.
struct CachedResponse {
    int status = 0;
    std::string body;
};

/// Content-addressed response cache: one JSON file per request, named by a
/// hash of the canonical request key, carrying the key itself (verified on
/// read), the status, the body and a fetch timestamp. Entries are immutable:
/// put() never overwrites. A recorded cache directory doubles as an offline
/// fixture for tests.
class WikiCache {
public:
    explicit WikiCache(std::string dir);

    std::optional<CachedResponse> get(const std::string& key) const;
    void put(const std::string& key, const CachedResponse& response) const;
    const std::string& dir() const { return dir_; }

    /// The file a key lives in (relative to dir); exposed for fixtures.
    static std::string entry_name(const std::string& key);

private:
    std::string dir_;
    mutable std::mutex mutex_;
};

struct HttpResponse {
    int status = 0; // 0 = transport failure
    std::string body;
    std::map<std::string, std::string> headers;
};

/// Transport interface; swapped for a scripted fake in tests.
class HttpFetcher {
public:
    virtual ~HttpFetcher() = default;
    virtual HttpResponse get(const std::string& host, const std::string& path) = 0;
};

/// TLS transport with a fixed User-Agent.
std::unique_ptr<HttpFetcher> make_https_fetcher(const std::string& user_agent);

/// Enforces a ceiling on calls/second across threads. Clock and sleep are
/// injectable so tests run without waiting.
class RateLimiter {
public:
    RateLimiter(double per_second, std::function<double()> clock = {},
                std::function<void(double)> sleep_fn = {});
    void acquire();

private:
    double min_interval_;
    std::function<double()> clock_;
    std::function<void(double)> sleep_;
    std::mutex mutex_;
    double next_slot_ = 0.0;
};

struct WikiOptions {
    std::string api_host = "en.wikipedia.org";
    std::string views_host = "wikimedia.org";
    std::string user_agent = "netcorr/0.1 (network statistics toolkit)";
    double rate_per_second = 10.0;
    int max_retries = 4;
    std::uint64_t seed = 0; // derives the retry-backoff jitter
    bool offline = false;   // answer from cache only; misses throw OfflineError
    std::function<void(double)> sleep_fn; // injectable for tests (backoff waits)
};

/// MediaWiki client with the mandatory cache in front of every request.
class WikiClient {
public:
    WikiClient(std::string cache_dir, WikiOptions options = {},
               std::unique_ptr<HttpFetcher> fetcher = nullptr);

    /// All article-namespace outgoing links of a page, following API
    /// continuation to exhaustion. Sorted, unique, canonical. Throws
    /// PageNotFoundError for a page that does not exist.
    std::vector<std::string> fetch_outlinks(const std::string& title);

    /// The EgoMinusEgo graph of a seed page: nodes are the seed's outlinks
    /// (never the seed itself), with an undirected edge uv when either page
    /// links the other. Red links are dropped; other per-page failures are
    /// tolerated up to 5% of the members.
    Graph build_ego_minus_ego(const std::string& seed_title, Diagnostics* diag = nullptr);

    /// Views summed over `month` ("YYYY-MM") plus info-page metrics, one
    /// entry per title; failed titles come back as nullopt.
    std::vector<std::optional<PageRecord>> fetch_metrics(const std::vector<std::string>& titles,
                                                         const std::string& month,
                                                         Diagnostics* diag = nullptr);

    const WikiCache& cache() const { return cache_; }

private:
    CachedResponse fetch(const std::string& host, const std::string& path);

    WikiCache cache_;
    WikiOptions options_;
    std::unique_ptr<HttpFetcher> fetcher_;
    RateLimiter limiter_;
};

} // namespace netcorr
