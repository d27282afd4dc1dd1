#pragma once

namespace zslt {

/// "zslt <semver>-<git describe>", fixed at configure time.
const char* version();

}  // namespace zslt
