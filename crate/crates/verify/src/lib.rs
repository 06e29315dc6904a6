//! Holds the `acceptance` test target, which prints one PASS/FAIL line per
//! acceptance criterion. Run it alone with
//! `cargo test -p majority-illusion-verify --test acceptance`.
