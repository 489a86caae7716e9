#pragma once

// NCBI E-utilities client: esearch for the PMID list, efetch for the
// MEDLINE export. Offline mode passes a saved export through untouched.

#include <chrono>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#ifdef BIOEVENT_WITH_TLS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"
#include "json.hpp"

namespace bioevent {

struct FetchOptions {
    std::size_t max_records = 10000;
    double rate_limit = 3.0;  // requests per second, NCBI guidance
    std::size_t page_size = 200;
    int retries = 3;
    std::string base_host = "https://eutils.ncbi.nlm.nih.gov";
};

class RateLimiter {
public:
    explicit RateLimiter(double per_second)
        : interval_(per_second > 0 ? 1.0 / per_second : 0.0) {}

    void wait() {
        using clock = std::chrono::steady_clock;
        auto now = clock::now();
        if (last_.time_since_epoch().count() != 0) {
            auto earliest =
                last_ + std::chrono::duration_cast<clock::duration>(
                            std::chrono::duration<double>(interval_));
            if (now < earliest) {
                std::this_thread::sleep_for(earliest - now);
                now = clock::now();
            }
        }
        last_ = now;
    }

private:
    double interval_;
    std::chrono::steady_clock::time_point last_{};
};

namespace eutils_detail {

inline std::string url_encode(std::string_view s) {
    static const char hex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else if (c == ' ') {
            out.push_back('+');
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

inline std::string http_get(const std::string& host, const std::string& path,
                            const FetchOptions& opts, RateLimiter& limiter) {
    for (int attempt = 0; attempt < opts.retries; ++attempt) {
        limiter.wait();
        httplib::Client client(host);
        client.set_read_timeout(30, 0);
        auto res = client.Get(path);
        if (res && res->status == 200) return res->body;
        std::this_thread::sleep_for(std::chrono::seconds(1 << attempt));
    }
    throw std::runtime_error("HTTP GET failed after " +
                             std::to_string(opts.retries) + " attempts: " +
                             host + path);
}

}  // namespace eutils_detail

inline std::string esearch_path(const std::string& query,
                                std::size_t max_records) {
    return "/entrez/eutils/esearch.fcgi?db=pubmed&retmode=json&retmax=" +
           std::to_string(max_records) +
           "&term=" + eutils_detail::url_encode(query);
}

inline std::string efetch_path(const std::vector<std::string>& ids) {
    std::string joined;
    for (const auto& id : ids) {
        if (!joined.empty()) joined.push_back(',');
        joined += id;
    }
    return "/entrez/eutils/efetch.fcgi?db=pubmed&rettype=medline&retmode=text"
           "&id=" +
           joined;
}

inline std::vector<std::string> parse_esearch_ids(const std::string& body) {
    auto json = nlohmann::json::parse(body);
    std::vector<std::string> ids;
    for (const auto& id : json.at("esearchresult").at("idlist"))
        ids.push_back(id.get<std::string>());
    return ids;
}

/// Online fetch: esearch then paged efetch, concatenating the MEDLINE
/// exports. max_records == 0 short-circuits to an empty stream.
inline std::string fetch_pubmed(const std::string& query,
                                const FetchOptions& opts = {}) {
    if (opts.max_records == 0) return {};
    RateLimiter limiter(opts.rate_limit);
    std::string ids_body = eutils_detail::http_get(
        opts.base_host, esearch_path(query, opts.max_records), opts, limiter);
    auto ids = parse_esearch_ids(ids_body);
    if (ids.empty()) return {};

    std::string stream;
    for (std::size_t i = 0; i < ids.size(); i += opts.page_size) {
        std::vector<std::string> page(
            ids.begin() + static_cast<std::ptrdiff_t>(i),
            ids.begin() + static_cast<std::ptrdiff_t>(
                              std::min(i + opts.page_size, ids.size())));
        stream += eutils_detail::http_get(opts.base_host, efetch_path(page),
                                          opts, limiter);
    }
    return stream;
}

/// Offline mode: byte-identical pass-through of a saved MEDLINE export.
inline std::string fetch_pubmed_offline(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open MEDLINE export: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace bioevent
