//! Every example program runs to completion.

macro_rules! example {
    ($name:ident, $path:literal) => {
        #[allow(dead_code)]
        #[path = $path]
        mod $name;

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example!(field_arithmetic, "../examples/field_arithmetic.rs");
example!(subsum_sets, "../examples/subsum_sets.rs");
example!(certificates, "../examples/certificates.rs");
example!(closed_forms, "../examples/closed_forms.rs");
example!(theorem_verification, "../examples/theorem_verification.rs");
example!(sharpness, "../examples/sharpness.rs");
example!(nullstellensatz_audit, "../examples/nullstellensatz_audit.rs");
example!(double_bound, "../examples/double_bound.rs");
example!(cli_reports, "../examples/cli_reports.rs");
