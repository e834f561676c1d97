//! Every example under `examples/` runs to completion.

macro_rules! example_test {
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

example_test!(load_and_split, "../examples/load_and_split.rs");
example_test!(similarity_kernels, "../examples/similarity_kernels.rs");
example_test!(recommend_user, "../examples/recommend_user.rs");
example_test!(evaluate_metrics, "../examples/evaluate_metrics.rs");
example_test!(beta_sweep, "../examples/beta_sweep.rs");
example_test!(topn_sweep, "../examples/topn_sweep.rs");
example_test!(complexity_scaling, "../examples/complexity_scaling.rs");
example_test!(headline_experiment, "../examples/headline_experiment.rs");
