#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oaclass/doi.hpp"

namespace oaclass {

// Request discipline for one endpoint: never faster than
// max_requests_per_second, at most max_retries retries per request with
// exponential backoff from backoff_base_ms (an explicit Retry-After wins).
struct Politeness {
    double max_requests_per_second = 2.0;
    int max_retries = 3;
    int backoff_base_ms = 500;
};

enum class HarvestProtocol { OaiPmh, PagedJson };

struct HarvestJob {
    std::string endpoint_url;
    HarvestProtocol protocol = HarvestProtocol::OaiPmh;
    std::optional<std::string> from;     // OAI "from" timestamp
    std::optional<std::string> until;    // OAI "until" timestamp
    std::optional<std::string> set_spec; // OAI setSpec
    Politeness politeness;
    std::optional<std::string> resume_state; // opaque resumption token
};

// Enforces a minimum spacing of 1/rate between request starts, which keeps
// any 1-second sliding window at or under the configured rate.
class RateLimiter {
public:
    explicit RateLimiter(double max_requests_per_second);

    // Blocks until the next request may start; returns that instant.
    std::chrono::steady_clock::time_point acquire();

private:
    std::chrono::steady_clock::duration min_interval_;
    std::optional<std::chrono::steady_clock::time_point> last_;
};

struct HarvestOptions {
    // Stop after this many pages and persist a resumable state (0 = run to
    // exhaustion). Supports incremental harvesting and interruption tests.
    std::size_t max_pages_per_run = 0;
};

// Persisted between runs in <out_dir>/state.json.
struct HarvestState {
    std::string resumption_token;
    std::size_t pages_done = 0;
    bool complete = false;
};

struct HarvestResult {
    std::size_t records_written = 0;
    std::size_t requests_made = 0;
    HarvestState state;
    std::string records_path; // parsed NDJSON sidecar
    std::string pages_dir;    // raw responses, one file per page
};

HarvestState load_harvest_state(const std::string& out_dir);

// OAI-PMH ListRecords harvest with metadataPrefix=oai_dc. Follows
// resumptionToken chains, honors Retry-After on 503, keeps the raw bytes of
// every page next to the parsed NDJSON sidecar, and leaves a state file that
// makes an interrupted run resumable. noRecordsMatch is an empty but
// successful harvest; other OAI error codes raise ProtocolError; transport
// failures that survive the retry budget raise TransportError.
HarvestResult harvest_oai(const HarvestJob& job, const std::string& out_dir,
                          const HarvestOptions& options = {});

struct OaiIdentity {
    std::string repository_name;
    std::string base_url;
    std::string protocol_version;
    std::string earliest_datestamp;
};

// OAI-PMH Identify.
OaiIdentity identify_oai(const std::string& endpoint_url, const Politeness& politeness);

struct FetchResult {
    std::size_t items_written = 0;
    std::size_t requests_made = 0;
    std::vector<std::string> misses; // per-item failures, run continued
};

// Paginated JSON fetch into NDJSON, one line per item. Without an id list the
// endpoint is paged ({"items":[...]} plus "next_cursor" or "offset"/"total");
// with one, each id is fetched as <endpoint>/<encoded-id> and a 404 is a
// logged miss, not a failure. 401/403 raise AuthError.
FetchResult fetch_paged_json(const HarvestJob& job, const std::string& out_path,
                             const std::vector<Doi>& id_list = {});

} // namespace oaclass
