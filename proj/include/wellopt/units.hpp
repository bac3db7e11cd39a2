#pragma once

// Unit conversion constants. The simulator works in SI internally
// (Pa, m2, s); public interfaces speak bar, mD, cp and day. Economics
// converts m3 to barrels at its own boundary.
namespace wellopt::units {

inline constexpr double kBarToPascal = 1.0e5;
inline constexpr double kMilliDarcyToM2 = 9.869233e-16;
inline constexpr double kCentipoiseToPascalSecond = 1.0e-3;
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kDaysPerYear = 365.0;
inline constexpr double kBarrelsPerCubicMeter = 6.2898;

}  // namespace wellopt::units
