#pragma once

namespace rfg {

/// Selects the serial reference path or the OpenMP kernel. Both must agree
/// bit for bit; the serial path is what the tests treat as ground truth.
enum class Exec { serial, parallel };

} // namespace rfg
