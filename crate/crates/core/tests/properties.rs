//! Property tests, one test per module invariant. Each runs from a fixed seed.

mod common;

fn run_property(name: &str) {
    let suite = common::property_suite();
    let (_, check) = suite.iter().find(|(n, _)| *n == name).expect("property is registered");
    if let Err(e) = check() {
        panic!("{name}: {e}");
    }
}

macro_rules! properties {
    ($($test:ident => $name:literal),* $(,)?) => {
        $(#[test] fn $test() { run_property($name); })*

        #[test]
        fn every_property_has_a_test() {
            let listed = [$($name),*];
            for (name, _) in common::property_suite() {
                assert!(listed.contains(&name), "{name} has no test");
            }
        }
    };
}

properties! {
    schatten_dominates_diagonal => "schatten dominates diagonal",
    schatten_unitary_invariance => "schatten unitary invariance",
    holder_inequality => "holder inequality",
    polar_maximality => "polar maximality",
    embedding_linearity => "embedding linearity",
    embedding_reads_only_the_diagonal => "embedding reads only the diagonal",
    adjoint_involution => "adjoint involution",
    random_channels_unital_and_cptp => "random channels unital and cptp",
    cut_below_sinfty_s1 => "cut below sinfty_s1",
    mixing_lemma => "mixing lemma",
    monotone_ascent => "monotone ascent",
    witness_replay => "witness replay",
    embedding_equalities => "embedding equalities",
    commutative_converse => "commutative converse",
    twirl_projects => "twirl projects",
    phase_averaging_dephases => "phase averaging dephases",
    converse_on_covariant_instances => "converse on covariant instances",
    creation_covariance => "creation covariance",
    creation_family_invariants => "creation family invariants",
    hodge_signed_permutation => "hodge signed permutation",
    covariant_grothendieck_assembly => "covariant grothendieck assembly",
    lift_commutes_with_shifts => "lift commutes with shifts",
    experiments_deterministic => "experiments deterministic",
}
