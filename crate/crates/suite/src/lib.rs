//! Holds the `acceptance` test target; run it with
//! `cargo test --release -p ptl-suite --test acceptance`.
