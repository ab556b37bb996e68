#include "netcorr/wiki.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

#include "netcorr/detail/hash.hpp"
#include "netcorr/detail/rng.hpp"
#include "netcorr/detail/text.hpp"
#include "netcorr/error.hpp"

namespace netcorr {

namespace {

using nlohmann::json;

// Client-side guard on top of the server-side plnamespace filter; links
// carrying any of these prefixes are never articles.
const char* const kExcludedPrefixes[] = {
    "Category:",  "Template:",  "File:",    "Image:",   "Wikipedia:", "Help:",
    "Portal:",    "Talk:",      "User:",    "Draft:",   "MediaWiki:", "Special:",
    "Module:",    "TimedText:", "Book:",    "Gadget:",
};

bool has_excluded_prefix(const std::string& title) {
    for (const char* prefix : kExcludedPrefixes) {
        if (title.rfind(prefix, 0) == 0) return true;
    }
    return false;
}

json parse_json_body(const std::string& body, const std::string& what) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) throw Error("malformed response for " + what);
    return j;
}

/// First page object of an action-API query response (formatversion=2).
const json& first_page(const json& j, const std::string& title) {
    if (!j.contains("query") || !j["query"].contains("pages") || j["query"]["pages"].empty())
        throw Error("unexpected API response for " + title);
    const json& page = j["query"]["pages"][0];
    if (page.value("missing", false) || page.value("invalid", false))
        throw PageNotFoundError("page not found: " + title);
    return page;
}

long long nonnegative(long long v, const std::string& what) {
    if (v < 0) throw Error("negative " + what + " in response");
    return v;
}

int days_in_month(int year, int month) {
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2) {
        bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return days[month - 1];
}

struct Month {
    int year = 0;
    int month = 0;
};

Month parse_month(const std::string& s) {
    auto bad = [&] { throw InputError("month must be YYYY-MM: " + s); };
    if (s.size() != 7 || s[4] != '-') bad();
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad();
    Month m;
    m.year = std::stoi(s.substr(0, 4));
    m.month = std::stoi(s.substr(5, 2));
    if (m.month < 1 || m.month > 12) bad();
    return m;
}

std::string two_digits(int v) {
    std::string s = std::to_string(v);
    return v < 10 ? "0" + s : s;
}

class HttplibFetcher : public HttpFetcher {
public:
    explicit HttplibFetcher(std::string user_agent) : user_agent_(std::move(user_agent)) {}

    HttpResponse get(const std::string& host, const std::string& path) override {
        httplib::SSLClient client(host);
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        client.set_follow_location(true);
        httplib::Headers headers{{"User-Agent", user_agent_}};
        auto res = client.Get(path, headers);
        HttpResponse out;
        if (!res) return out; // status 0: transport failure
        out.status = res->status;
        out.body = res->body;
        for (const auto& [k, v] : res->headers) out.headers.emplace(k, v);
        return out;
    }

private:
    std::string user_agent_;
};

} // namespace

std::string canonical_title(const std::string& title) {
    std::string t(detail::trim(title));
    std::string out;
    out.reserve(t.size());
    bool pending_sep = false;
    for (char c : t) {
        if (c == ' ' || c == '_' || c == '\t') {
            pending_sep = !out.empty();
            continue;
        }
        if (pending_sep) {
            out.push_back('_');
            pending_sep = false;
        }
        out.push_back(c);
    }
    if (!out.empty())
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xf]);
        }
    }
    return out;
}

WikiCache::WikiCache(std::string dir) : dir_(std::move(dir)) {
    if (dir_.empty()) throw InputError("cache directory required");
    std::filesystem::create_directories(dir_);
}

std::string WikiCache::entry_name(const std::string& key) {
    return detail::fnv1a64_hex(key) + ".json";
}

std::optional<CachedResponse> WikiCache::get(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto path = std::filesystem::path(dir_) / entry_name(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream body;
    body << in.rdbuf();
    json j = json::parse(body.str(), nullptr, false);
    if (j.is_discarded() || j.value("key", std::string{}) != key) return std::nullopt;
    CachedResponse r;
    r.status = j.value("status", 0);
    r.body = j.value("body", std::string{});
    return r;
}

void WikiCache::put(const std::string& key, const CachedResponse& response) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto path = std::filesystem::path(dir_) / entry_name(key);
    if (std::filesystem::exists(path)) return; // entries are immutable
    json j;
    j["key"] = key;
    j["status"] = response.status;
    j["fetched"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    j["body"] = response.body;
    auto tmp = path;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache entry " + tmp.string());
    out << j.dump();
    out.close();
    std::filesystem::rename(tmp, path);
}

std::unique_ptr<HttpFetcher> make_https_fetcher(const std::string& user_agent) {
    return std::make_unique<HttplibFetcher>(user_agent);
}

RateLimiter::RateLimiter(double per_second, std::function<double()> clock,
                         std::function<void(double)> sleep_fn)
    : min_interval_(per_second > 0 ? 1.0 / per_second : 0.0),
      clock_(std::move(clock)),
      sleep_(std::move(sleep_fn)) {
    if (!clock_) {
        clock_ = [] {
            return std::chrono::duration<double>(
                       std::chrono::steady_clock::now().time_since_epoch())
                .count();
        };
    }
    if (!sleep_) {
        sleep_ = [](double s) {
            std::this_thread::sleep_for(std::chrono::duration<double>(s));
        };
    }
}

void RateLimiter::acquire() {
    if (min_interval_ <= 0.0) return;
    double wait = 0.0;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        double now = clock_();
        double slot = std::max(now, next_slot_);
        next_slot_ = slot + min_interval_;
        wait = slot - now;
    }
    if (wait > 0.0) sleep_(wait);
}

WikiClient::WikiClient(std::string cache_dir, WikiOptions options,
                       std::unique_ptr<HttpFetcher> fetcher)
    : cache_(std::move(cache_dir)),
      options_(std::move(options)),
      fetcher_(std::move(fetcher)),
      limiter_(options_.rate_per_second) {
    if (!options_.sleep_fn)
        options_.sleep_fn = [](double s) {
            std::this_thread::sleep_for(std::chrono::duration<double>(s));
        };
    if (!fetcher_ && !options_.offline) fetcher_ = make_https_fetcher(options_.user_agent);
}

CachedResponse WikiClient::fetch(const std::string& host, const std::string& path) {
    std::string key = "GET " + host + path;
    if (auto hit = cache_.get(key)) return *hit;
    if (options_.offline || !fetcher_) throw OfflineError("offline and not cached: " + key);

    for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
        limiter_.acquire();
        HttpResponse res = fetcher_->get(host, path);
        if (res.status == 200 || res.status == 404) {
            CachedResponse ok{res.status, res.body};
            cache_.put(key, ok);
            return ok;
        }
        bool retryable = res.status == 0 || res.status == 429 || res.status >= 500;
        if (!retryable) throw Error("HTTP " + std::to_string(res.status) + " for " + key);
        if (attempt == options_.max_retries) break;
        double delay = 0.5 * static_cast<double>(1u << attempt);
        detail::Rng jitter(detail::derive_seed(
            options_.seed, detail::fnv1a64(key) ^ static_cast<std::uint64_t>(attempt)));
        delay += 0.25 * jitter.uniform01();
        if (auto it = res.headers.find("Retry-After"); it != res.headers.end()) {
            if (auto secs = detail::parse_int(it->second)) {
                delay = std::max(delay, static_cast<double>(*secs));
            }
        }
        options_.sleep_fn(delay);
    }
    throw Error("HTTP retries exhausted for " + key);
}

std::vector<std::string> WikiClient::fetch_outlinks(const std::string& title) {
    std::string canon = canonical_title(title);
    if (canon.empty()) throw InputError("empty page title");
    std::string base = "/w/api.php?action=query&format=json&formatversion=2&prop=links"
                       "&plnamespace=0&pllimit=max&titles=" +
                       url_encode(canon);
    std::set<std::string> links;
    std::string continue_token;
    for (;;) {
        std::string path = base;
        if (!continue_token.empty()) path += "&plcontinue=" + url_encode(continue_token);
        auto res = fetch(options_.api_host, path);
        if (res.status != 200) throw Error("HTTP " + std::to_string(res.status) + " for " + canon);
        json j = parse_json_body(res.body, canon);
        const json& page = first_page(j, canon);
        if (page.contains("links")) {
            for (const auto& link : page["links"]) {
                if (link.value("ns", 0) != 0) continue;
                std::string t = canonical_title(link.value("title", std::string{}));
                if (t.empty() || has_excluded_prefix(t)) continue;
                links.insert(std::move(t));
            }
        }
        if (j.contains("continue") && j["continue"].contains("plcontinue"))
            continue_token = j["continue"]["plcontinue"].get<std::string>();
        else
            break;
    }
    return {links.begin(), links.end()};
}

Graph WikiClient::build_ego_minus_ego(const std::string& seed_title, Diagnostics* diag) {
    std::string seed = canonical_title(seed_title);
    auto members = fetch_outlinks(seed); // sorted, unique, no namespace junk
    members.erase(std::remove(members.begin(), members.end(), seed), members.end());
    if (members.empty()) throw Error("seed page has no article outlinks: " + seed);

    std::unordered_set<std::string> member_set(members.begin(), members.end());
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::string> nodes;
    int failures = 0;
    for (const auto& v : members) {
        std::vector<std::string> links;
        try {
            links = fetch_outlinks(v);
        } catch (const PageNotFoundError&) {
            if (diag) diag->warn("red link dropped: " + v);
            continue; // not a node at all
        } catch (const Error& e) {
            ++failures;
            if (diag) diag->warn("fetch failed for " + v + ": " + e.what());
            nodes.push_back(v); // keep the node; its outgoing links are unknown
            continue;
        }
        nodes.push_back(v);
        for (const auto& t : links) {
            if (t == seed || t == v) continue;
            if (member_set.count(t)) edges.emplace_back(v, t);
        }
    }
    if (20 * failures > static_cast<int>(members.size()))
        throw Error("too many page fetch failures: " + std::to_string(failures) + " of " +
                    std::to_string(members.size()));

    // Edges may point at red links recorded in member_set; keep only pairs
    // whose both ends survived as nodes.
    std::unordered_set<std::string> node_set(nodes.begin(), nodes.end());
    std::vector<std::pair<std::string, std::string>> kept;
    kept.reserve(edges.size());
    for (auto& e : edges)
        if (node_set.count(e.first) && node_set.count(e.second)) kept.push_back(std::move(e));
    return build_graph(kept, nodes);
}

std::vector<std::optional<PageRecord>> WikiClient::fetch_metrics(
    const std::vector<std::string>& titles, const std::string& month, Diagnostics* diag) {
    Month m = parse_month(month);
    std::string first_day =
        std::to_string(m.year) + two_digits(m.month) + "0100";
    std::string last_day = std::to_string(m.year) + two_digits(m.month) +
                           two_digits(days_in_month(m.year, m.month)) + "00";

    std::vector<std::optional<PageRecord>> out;
    out.reserve(titles.size());
    for (const auto& raw_title : titles) {
        std::string title = canonical_title(raw_title);
        try {
            PageRecord rec;
            rec.title = title;

            auto info = fetch(options_.api_host,
                              "/w/api.php?action=query&format=json&formatversion=2&prop=info"
                              "&inprop=watchers&titles=" +
                                  url_encode(title));
            if (info.status != 200)
                throw Error("HTTP " + std::to_string(info.status) + " for info: " + title);
            json info_json = parse_json_body(info.body, title);
            const json& page = first_page(info_json, title);
            rec.length_bytes = nonnegative(page.value("length", 0LL), "page length");
            if (page.contains("watchers"))
                rec.watchers = nonnegative(page["watchers"].get<long long>(), "watchers");

            auto edits = fetch(options_.api_host, "/w/rest.php/v1/page/" + url_encode(title) +
                                                      "/history/counts/edits");
            if (edits.status == 404) throw PageNotFoundError("page not found: " + title);
            if (edits.status != 200)
                throw Error("HTTP " + std::to_string(edits.status) + " for edits: " + title);
            rec.edits =
                nonnegative(parse_json_body(edits.body, title).value("count", 0LL), "edit count");

            auto views = fetch(options_.views_host,
                               "/api/rest_v1/metrics/pageviews/per-article/en.wikipedia"
                               "/all-access/user/" +
                                   url_encode(title) + "/daily/" + first_day + "/" + last_day);
            if (views.status == 200) {
                long long total = 0;
                json vj = parse_json_body(views.body, title);
                if (vj.contains("items"))
                    for (const auto& item : vj["items"])
                        total += nonnegative(item.value("views", 0LL), "views");
                rec.views = total;
            } else {
                // The pageviews service 404s when there is no traffic at
                // all in the window; that is a real zero, not a failure.
                rec.views = 0;
            }
            out.emplace_back(std::move(rec));
        } catch (const Error& e) {
            if (diag) diag->warn("metrics failed for " + title + ": " + e.what());
            out.emplace_back(std::nullopt);
        }
    }
    return out;
}

} // namespace netcorr
