//! Holds the `acceptance` test target, which prints one PASS/FAIL line per
//! acceptance criterion of the library and exits nonzero if any fails.
