#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "galimage/newform.hpp"

namespace galimage {

struct LmfdbOptions {
    std::string base_url;  // empty: LMFDB_BASE_URL, then https://www.lmfdb.org
    bool offline = false;
    int timeout_seconds = 30;
};

std::string default_lmfdb_base_url();

/// N.k.c.x with c, x lowercase letter strings, e.g. 160.3.c.a.
bool valid_newform_label(const std::string& label);

struct FetchResult {
    NewformRecord record;
    std::uint64_t requested = 0;
    std::uint64_t obtained = 0;  // may be below requested; never padded
};

/// Builds a record from one mf_newforms row and one mf_hecke_nf row. Coefficients come from
/// "an" when it is long enough, otherwise they are rebuilt multiplicatively from "ap".
FetchResult convert_lmfdb(const std::string& label, const nlohmann::json& newform_row,
                          const nlohmann::json& hecke_row, std::uint64_t wanted);

/// GET /api/mf_newforms and /api/mf_hecke_nf for the label. Throws DataError on a bad label,
/// in offline mode, and on HTTP or payload problems (with an excerpt of the payload).
FetchResult fetch_lmfdb(const std::string& label, std::uint64_t wanted, const LmfdbOptions& opts = {});

}  // namespace galimage
