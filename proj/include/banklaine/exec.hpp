#pragma once

namespace bl {

// Serial kernels are the reference; parallel ones must agree with them.
enum class ExecPolicy { Serial, Parallel };

}  // namespace bl
