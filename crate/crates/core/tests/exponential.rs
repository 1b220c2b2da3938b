use lambkit_core::calculus::{check_proof, CalculusConfig, Preset};
use lambkit_core::gen::{default_vars, random_sequent};
use lambkit_core::prover::{
    bang_translate, prove_from_hypotheses, ProofStatus, ProverError, Route,
};
use lambkit_core::syntax::Sequent;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seq(s: &str) -> Sequent {
    s.parse().unwrap()
}

#[test]
fn translation_prefixes_curried_hypotheses() {
    assert_eq!(bang_translate(&[seq("=> a")], &seq("=> a")), seq("!a => a"));
    assert_eq!(bang_translate(&[], &seq("p => p")), seq("p => p"));
    assert_eq!(
        bang_translate(&[seq("a => b")], &seq("=> c")),
        seq("!(a\\b) => c")
    );
    assert_eq!(
        bang_translate(&[seq("a, b => c"), seq("=> d")], &seq("e => f")),
        seq("!(b\\(a\\c)), !d, e => f")
    );
}

#[test]
fn bang_proofs_replay() {
    let cfg =
        CalculusConfig::preset(Preset::PF).with_hypotheses(vec![seq("p => q"), seq("q => r")]);
    let st =
        prove_from_hypotheses(&seq("p => r"), &cfg, Route::Bang { conservative: true }).unwrap();
    let bang_cfg = CalculusConfig {
        bang: true,
        hypotheses: vec![],
        ..cfg
    };
    assert!(check_proof(
        st.proof().expect("chained hypotheses"),
        &bang_cfg
    ));
}

#[test]
fn conservative_route_rejects_products() {
    let cfg = CalculusConfig::preset(Preset::L01).with_hypotheses(vec![seq("=> b.c")]);
    let err = prove_from_hypotheses(&seq("=> b.c"), &cfg, Route::Bang { conservative: true });
    assert_eq!(err, Err(ProverError::ProductInBangRoute));
}

#[test]
fn routes_agree_on_random_product_free_inputs() {
    let pf = CalculusConfig::preset(Preset::PF);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut unknown, mut proved) = (0, 0);
    for _ in 0..40 {
        let k = rng.gen_range(1..=2);
        let h: Vec<Sequent> = (0..k)
            .map(|_| random_sequent(&mut rng, &pf, &default_vars(), 1, 1))
            .collect();
        let s = random_sequent(&mut rng, &pf, &default_vars(), 2, 1);
        let cfg = pf.clone().with_hypotheses(h.clone());
        let direct = prove_from_hypotheses(&s, &cfg, Route::Direct).unwrap();
        let bang = prove_from_hypotheses(&s, &cfg, Route::Bang { conservative: true }).unwrap();
        if matches!(direct, ProofStatus::Unknown(_)) || matches!(bang, ProofStatus::Unknown(_)) {
            unknown += 1;
            continue;
        }
        assert_eq!(
            direct.is_proved(),
            bang.is_proved(),
            "{:?} / {}: {} vs {}",
            h,
            s,
            direct,
            bang
        );
        proved += direct.is_proved() as usize;
    }
    assert!(unknown < 4, "{} unknown", unknown);
    assert!(proved > 0);
}
