//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whittaker_cli::commands;
use whittaker_cli::schema::{ParamsJson, Scenario};
use whittaker_core::analysis::*;
use whittaker_core::lie::{bracket, involution, AlgebraId, Generator, LieElement, Sl2Basis};
use whittaker_core::linalg::dense_nullspace;
use whittaker_core::pbw::{Engine, Letter, ModuleElement, PairKind, PbwMonomial, WhittakerSetup};
use whittaker_core::{Classification, ExpPoly, Functional, LaurentPoly, OracleRule, Scalar, Verdict, Window};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

const PAIRS: [PairKind; 4] = [PairKind::GeqN, PairKind::GMinus, PairKind::VirGeqN, PairKind::Sl2E];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn geometric(l: i64) -> Functional {
    ExpPoly::geometric(s(l)).unwrap().into()
}

fn identity() -> Functional {
    ExpPoly::term(s(1), 1, s(1)).unwrap().into()
}

fn mixed() -> Functional {
    ExpPoly::new([(s(2), vec![s(0), s(1)]), (s(3), vec![s(1)])]).unwrap().into()
}

fn oracle() -> Functional {
    Functional::oracle(OracleRule::half_square_power(2).unwrap(), false)
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn random_exp(r: &mut ChaCha8Rng) -> Functional {
    match r.gen_range(0..5) {
        0 => Functional::zero(),
        1 => geometric(*[-2, -1, 1, 2, 3].choose(r).unwrap()),
        2 => identity(),
        3 => mixed(),
        _ => ExpPoly::term(s(r.gen_range(1..=2)), r.gen_range(0..=2), s(r.gen_range(-3..=3))).unwrap().into(),
    }
}

fn random_functional(r: &mut ChaCha8Rng, allow_oracle: bool) -> Functional {
    if allow_oracle && r.gen_bool(0.2) {
        oracle()
    } else {
        random_exp(r)
    }
}

fn random_setup_n(r: &mut ChaCha8Rng, pair: PairKind, n: i64, allow_oracle: bool) -> WhittakerSetup {
    let psi = |r: &mut ChaCha8Rng| (n..=2 * n).map(|i| (i, random_functional(r, allow_oracle))).collect::<Vec<_>>();
    match pair {
        PairKind::GeqN => WhittakerSetup::geq_n(n, psi(r)).unwrap(),
        PairKind::GMinus => WhittakerSetup::g_minus(random_functional(r, allow_oracle)).unwrap(),
        PairKind::VirGeqN => {
            let p = psi(r);
            WhittakerSetup::vir_geq_n(n, p, random_functional(r, allow_oracle)).unwrap()
        }
        PairKind::Sl2E => WhittakerSetup::sl2_e(random_functional(r, allow_oracle), s(r.gen_range(-2..=2))).unwrap(),
    }
}

fn random_setup(r: &mut ChaCha8Rng, pair: PairKind, allow_oracle: bool) -> WhittakerSetup {
    let n = r.gen_range(1..=2);
    random_setup_n(r, pair, n, allow_oracle)
}

fn algebra_generator(r: &mut ChaCha8Rng, alg: AlgebraId) -> Generator {
    let k = r.gen_range(-5..=5);
    match alg {
        AlgebraId::LoopWitt => Generator::WittD { n: r.gen_range(-1..=5), k },
        AlgebraId::LoopVirasoro => {
            if r.gen_bool(0.15) {
                Generator::VirC { k }
            } else {
                Generator::VirD { n: r.gen_range(-5..=5), k }
            }
        }
        AlgebraId::AffineSl2 => match r.gen_range(0..7) {
            0 | 1 => Generator::Sl2 { x: Sl2Basis::E, k },
            2 | 3 => Generator::Sl2 { x: Sl2Basis::F, k },
            4 | 5 => Generator::Sl2 { x: Sl2Basis::H, k },
            _ => Generator::Sl2K,
        },
    }
}

fn algebra_element(r: &mut ChaCha8Rng, alg: AlgebraId) -> LieElement {
    let terms = r.gen_range(1..=3);
    LieElement::from_terms((0..terms).map(|_| (algebra_generator(r, alg), s(r.gen_range(-4..=4)))))
}

fn pair_generator(r: &mut ChaCha8Rng, setup: &WhittakerSetup) -> Generator {
    let k = r.gen_range(-3..=3);
    match setup.pair() {
        PairKind::GeqN => Generator::WittD { n: r.gen_range(-1..=2 * setup.n().unwrap() + 1), k },
        PairKind::GMinus => Generator::WittD { n: r.gen_range(-1..=3), k },
        PairKind::VirGeqN => {
            if r.gen_bool(0.1) {
                Generator::VirC { k }
            } else {
                Generator::VirD { n: r.gen_range(-2..=2 * setup.n().unwrap() + 1), k }
            }
        }
        PairKind::Sl2E => algebra_generator(r, AlgebraId::AffineSl2),
    }
}

fn pair_element(r: &mut ChaCha8Rng, setup: &WhittakerSetup) -> LieElement {
    let terms = r.gen_range(1..=2);
    LieElement::from_terms((0..terms).map(|_| (pair_generator(r, setup), s(r.gen_range(-3..=3)))))
}

fn free_letters(setup: &WhittakerSetup) -> Vec<Letter> {
    match setup.pair() {
        PairKind::GeqN => (-1..setup.n().unwrap()).map(Letter::D).collect(),
        PairKind::GMinus => (0..=3).map(Letter::D).collect(),
        PairKind::VirGeqN => (-2..setup.n().unwrap()).map(Letter::D).collect(),
        PairKind::Sl2E => vec![Letter::F, Letter::H],
    }
}

fn random_monomial(r: &mut ChaCha8Rng, setup: &WhittakerSetup, lth_max: usize) -> PbwMonomial {
    let letters = free_letters(setup);
    let lth = r.gen_range(0..=lth_max);
    PbwMonomial::from_factors((0..lth).map(|_| (*letters.choose(r).unwrap(), r.gen_range(-3..=3))))
}

fn random_element(r: &mut ChaCha8Rng, setup: &WhittakerSetup, lth_max: usize) -> ModuleElement {
    let terms = r.gen_range(1..=3);
    ModuleElement::from_terms((0..terms).map(|_| (random_monomial(r, setup, lth_max), s(r.gen_range(-3..=3)))))
}

/// The ten exp-polynomial setups per pair used by the witness and product
/// criteria: the three named functionals followed by random ones.
fn exp_setups(pair: PairKind) -> Vec<WhittakerSetup> {
    let mut r = rng(pair as u64 + 500);
    let mut out: Vec<WhittakerSetup> = [geometric(2), identity(), mixed()]
        .into_iter()
        .map(|f| match pair {
            PairKind::GeqN => WhittakerSetup::geq_n(1, [(1, f.clone()), (2, f)]).unwrap(),
            PairKind::GMinus => WhittakerSetup::g_minus(f).unwrap(),
            PairKind::VirGeqN => WhittakerSetup::vir_geq_n(1, [(1, f.clone()), (2, f)], geometric(3)).unwrap(),
            PairKind::Sl2E => WhittakerSetup::sl2_e(f, s(1)).unwrap(),
        })
        .collect();
    while out.len() < 10 {
        out.push(random_setup(&mut r, pair, false));
    }
    out
}

/// The acting family of a pair on exponents `[-4, 4]`, with the scalar each
/// member must act by on a Whittaker vector.
fn acting_family(setup: &WhittakerSetup, top: i64) -> Vec<(Generator, Scalar)> {
    let ks = -4..=4;
    match setup.pair() {
        PairKind::GeqN | PairKind::VirGeqN => {
            let vir = setup.pair() == PairKind::VirGeqN;
            let mut out: Vec<(Generator, Scalar)> = (setup.n().unwrap()..=top)
                .flat_map(|n| ks.clone().map(move |k| (n, k)))
                .map(|(n, k)| {
                    let g = if vir { Generator::VirD { n, k } } else { Generator::WittD { n, k } };
                    (g, setup.psi(n).evaluate(k))
                })
                .collect();
            if vir {
                out.extend(ks.map(|k| (Generator::VirC { k }, setup.phi_c().evaluate(k))));
            }
            out
        }
        PairKind::GMinus => ks.map(|k| (Generator::WittD { n: -1, k }, setup.phi().evaluate(k))).collect(),
        PairKind::Sl2E => ks.map(|k| (Generator::Sl2 { x: Sl2Basis::E, k }, setup.phi().evaluate(k))).collect(),
    }
}

fn whittaker_by_action(setup: &WhittakerSetup, u: &ModuleElement) -> bool {
    let e = Engine::new(setup);
    let top = e.degree_bound(u).unwrap_or(0).max(2 * setup.n().unwrap_or(0)) + 1;
    acting_family(setup, top).iter().all(|(g, c)| e.act(g, u).unwrap() == u.scale(c))
}

fn c1_bracket_laws() -> Outcome {
    let mut r = rng(1);
    let algebras = [AlgebraId::LoopWitt, AlgebraId::LoopVirasoro, AlgebraId::AffineSl2];
    for alg in algebras {
        for _ in 0..500 {
            let x = algebra_element(&mut r, alg);
            let y = algebra_element(&mut r, alg);
            let z = algebra_element(&mut r, alg);
            let b = |a: &LieElement, c: &LieElement| bracket(alg, a, c).unwrap();
            ensure!(b(&x, &y) == b(&y, &x).scale(&s(-1)), "antisymmetry fails in {alg} for {x:?}, {y:?}");
            let mut jac = b(&x, &b(&y, &z));
            for t in [b(&y, &b(&z, &x)), b(&z, &b(&x, &y))] {
                for (g, c) in t.iter() {
                    jac.add_term(*g, c);
                }
            }
            ensure!(jac.is_zero(), "Jacobi fails in {alg} for {x:?}, {y:?}, {z:?}");
        }
    }
    for _ in 0..200 {
        let x = algebra_element(&mut r, AlgebraId::LoopVirasoro);
        let y = algebra_element(&mut r, AlgebraId::LoopVirasoro);
        let alg = AlgebraId::LoopVirasoro;
        let lhs = involution(&bracket(alg, &x, &y).unwrap()).unwrap();
        let rhs = bracket(alg, &involution(&x).unwrap(), &involution(&y).unwrap()).unwrap();
        ensure!(lhs == rhs, "involution is not a homomorphism on {x:?}, {y:?}");
        ensure!(involution(&involution(&x).unwrap()).unwrap() == x, "involution is not of order 2 on {x:?}");
    }
    Ok("500 triples per algebra, 200 involution pairs".into())
}

fn c2_module_axiom() -> Outcome {
    let mut r = rng(2);
    for pair in PAIRS {
        for _ in 0..300 {
            let setup = random_setup(&mut r, pair, true);
            let x = pair_element(&mut r, &setup);
            let y = pair_element(&mut r, &setup);
            let u = random_element(&mut r, &setup, 3);
            let e = Engine::new(&setup);
            let xy = e.act_element(&x, &e.act_element(&y, &u).unwrap()).unwrap();
            let yx = e.act_element(&y, &e.act_element(&x, &u).unwrap()).unwrap();
            let br = e.act_element(&bracket(setup.algebra(), &x, &y).unwrap(), &u).unwrap();
            ensure!(&xy - &yx == br, "{} fails for x = {x:?}, y = {y:?}, u = {u}", pair.name());
        }
    }
    Ok("300 cases per pair".into())
}

fn c3_length_bound() -> Outcome {
    let mut r = rng(3);
    for _ in 0..200 {
        let n = r.gen_range(1..=3);
        let setup = random_setup_n(&mut r, PairKind::GeqN, n, true);
        let m = r.gen_range(n..=3 * n + 2);
        let k = r.gen_range(-5..=5);
        let u = random_monomial(&mut r, &setup, 3);
        let out = Engine::new(&setup).act(&Generator::WittD { n: m, k }, &ModuleElement::monomial(u.clone())).unwrap();
        ensure!(out.monomials().all(|w| w.lth() <= u.lth()), "D({m},{k}) raises the length of {u}");
    }
    Ok("200 cases".into())
}

fn geq_instance(r: &mut ChaCha8Rng, n: i64) -> PbwMonomial {
    let mut factors = Vec::new();
    let mut exps: Vec<i64> = (-4..=4).collect();
    exps.shuffle(r);
    for &k in exps.iter().take(r.gen_range(1..=2)) {
        for _ in 0..r.gen_range(1..=2) {
            factors.push((Letter::D(-1), k));
        }
    }
    for _ in 0..r.gen_range(0..=2) {
        factors.push((Letter::D(r.gen_range(0..n)), r.gen_range(-3..=3)));
    }
    PbwMonomial::from_factors(factors)
}

fn c4_coefficient_laws() -> Outcome {
    let mut r = rng(4);
    let mut lowest = 0;
    for n in 1..=3 {
        for _ in 0..20 {
            let setup = random_setup_n(&mut r, PairKind::GeqN, n, false);
            let u = geq_instance(&mut r, n);
            let k = r.gen_range(-4..=4);
            let e = Engine::new(&setup);
            let u_el = ModuleElement::monomial(u.clone());
            let out = &e.act(&Generator::WittD { n, k }, &u_el).unwrap() - &u_el.scale(&setup.psi(n).evaluate(k));
            for f in u.factors().into_iter().filter(|f| f.letter == Letter::D(-1)) {
                let mut letters = u.letters().to_vec();
                let pos = letters.iter().position(|&x| x == (Letter::D(-1), f.k)).unwrap();
                letters.remove(pos);
                letters.push((Letter::D(n - 1), k + f.k));
                let target = PbwMonomial::from_factors(letters);
                let want = s(-(f.mult as i64) * (n + 1));
                ensure!(out.coeff(&target) == want, "{u} under D({n},{k}): coefficient of {target} is not {want}");
                lowest += 1;
            }
        }
    }
    ensure!(lowest >= 50, "only {lowest} lowest-block instances");
    let mut leading = 0;
    for _ in 0..60 {
        let setup = random_setup(&mut r, PairKind::GMinus, false);
        let lth = r.gen_range(1..=3);
        let u = PbwMonomial::from_factors((0..lth).map(|_| (Letter::D(r.gen_range(1..=3)), r.gen_range(-3..=3))));
        let k = r.gen_range(-4..=4);
        let e = Engine::new(&setup);
        let u_el = ModuleElement::monomial(u.clone());
        let out = &e.act(&Generator::WittD { n: -1, k }, &u_el).unwrap() - &u_el.scale(&setup.phi().evaluate(k));
        let last = *u.factors().last().unwrap();
        let Letter::D(rn) = last.letter else { unreachable!() };
        let mut letters = u.letters().to_vec();
        letters.pop();
        letters.push((Letter::D(rn - 1), k + last.k));
        let want = (PbwMonomial::from_factors(letters), s((rn + 1) * last.mult as i64));
        let got = out.leading().map(|(m, c)| (m.clone(), c.clone()));
        ensure!(got.as_ref() == Some(&want), "{u} under D(-1,{k}): leading term {got:?}, expected {want:?}");
        leading += 1;
    }
    Ok(format!("{lowest} lowest-block and {leading} leading-term instances"))
}

fn c5_witnesses() -> Outcome {
    let mut count = 0;
    for pair in PAIRS {
        for setup in exp_setups(pair) {
            let w = reducibility_witness(&setup).map_err(|e| format!("{}: {e}", pair.name()))?;
            ensure!(!w.is_zero() && !w.is_cyclic_multiple(), "{}: witness {w} lies on the cyclic line", pair.name());
            let verdict = Engine::new(&setup).is_whittaker(&w).unwrap();
            ensure!(verdict == Verdict::ExactTrue, "{}: witness {w} gives {verdict:?}", pair.name());
            ensure!(whittaker_by_action(&setup, &w), "{}: witness {w} fails the concrete action", pair.name());
            count += 1;
        }
    }
    Ok(format!("{count} witnesses, 10 per pair"))
}

fn c6_products() -> Outcome {
    let mut count = 0;
    for pair in PAIRS {
        for setup in exp_setups(pair) {
            let c = joint_annihilator(&setup).map_err(|e| e.to_string())?;
            let factors = [c.clone(), &c * &LaurentPoly::t_pow(-1), &c * &LaurentPoly::linear(&s(5))];
            for n in 1..=3 {
                let u = product_whittaker_vector(&setup, &factors[..n]).map_err(|e| e.to_string())?;
                ensure!(Engine::new(&setup).is_whittaker(&u).unwrap() == Verdict::ExactTrue, "{u} is not Whittaker");
                ensure!(u.lth() == n, "{u} has length {} instead of {n}", u.lth());
                count += 1;
            }
        }
    }
    Ok(format!("{count} product vectors, s = 1, 2, 3"))
}

fn c7_oracle_search() -> Outcome {
    let setups = [
        WhittakerSetup::geq_n(1, [(1, geometric(2)), (2, oracle())]).unwrap(),
        WhittakerSetup::g_minus(oracle()).unwrap(),
        WhittakerSetup::vir_geq_n(1, [(1, oracle()), (2, geometric(3))], identity()).unwrap(),
        WhittakerSetup::sl2_e(oracle(), s(0)).unwrap(),
    ];
    let mut dims = Vec::new();
    for setup in setups {
        let params = SearchParams { lth_max: 3, exp_window: Window::new(-4, 4), ..SearchParams::defaults(&setup) };
        let res = search_whittaker(&setup, &params).map_err(|e| e.to_string())?;
        ensure!(res.windowed, "{}: search not flagged windowed", setup.pair().name());
        ensure!(
            res.basis == vec![ModuleElement::cyclic()],
            "{}: nullspace has dimension {}",
            setup.pair().name(),
            res.dimension()
        );
        dims.push(format!("{} {} columns", setup.pair().name(), res.columns));
    }
    Ok(format!("span{{v}} for {}", dims.join(", ")))
}

fn c8_structural_filters() -> Outcome {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    ensure!(!files.is_empty(), "empty corpus");
    let mut vectors = 0;
    for file in &files {
        let text = std::fs::read_to_string(file).map_err(|e| e.to_string())?;
        let sc = Scenario::parse(&file.display().to_string(), &text).map_err(|e| e.to_string())?;
        let params = sc.params.resolve(&sc.setup).map_err(|v| format!("{}: {v:?}", sc.name))?;
        let res = search_whittaker(&sc.setup, &params).map_err(|e| format!("{}: {e}", sc.name))?;
        let engine = Engine::new(&sc.setup);
        for b in &res.basis {
            ensure!(engine.is_whittaker(b).unwrap().holds(), "{}: {b} is not Whittaker", sc.name);
            if b.is_cyclic_multiple() {
                continue;
            }
            for m in b.monomials() {
                let st = m.stats();
                let ok = match sc.setup.pair() {
                    PairKind::GeqN => st.lth_at(-1) == 0,
                    PairKind::VirGeqN => st.d_set.iter().all(|d| *d >= 0),
                    PairKind::GMinus => st.d_set.iter().all(|d| *d == 0),
                    PairKind::Sl2E => m.letters().iter().all(|(l, _)| *l != Letter::F),
                };
                ensure!(ok, "{}: monomial {m} violates the structural filter", sc.name);
            }
            vectors += 1;
        }
    }
    Ok(format!("{} scenarios, {vectors} non-cyclic basis vectors", files.len()))
}

fn shifted_value(f: &LaurentPoly, phi: &Functional, n: i64) -> Scalar {
    f.iter().map(|(j, c)| c * &phi.evaluate(n + j)).sum()
}

fn random_laurent(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> LaurentPoly {
    LaurentPoly::from_terms((lo..=hi).map(|j| (j, s(r.gen_range(-3..=3)))))
}

fn c9_functional_layer() -> Outcome {
    let mut r = rng(9);
    let mut functionals: Vec<Functional> = Vec::new();
    for pair in PAIRS {
        for setup in exp_setups(pair) {
            for slot in criterion_slots(&setup) {
                functionals.push(setup.functional(slot));
            }
        }
    }
    let window = Window::new(-20, 20);
    for phi in &functionals {
        let Functional::ExpPoly(e) = phi else { return Err(format!("{phi} is not an exp-polynomial")) };
        let ann = e.annihilator_generator();
        ensure!(phi.shift(&ann).is_zero(window) == Verdict::ExactTrue, "{ann} does not annihilate {phi}");
        let d = (ann.max_exp().unwrap() - ann.min_exp().unwrap()) as usize;
        if d > 0 {
            let rows: Vec<Vec<Scalar>> =
                (-20..=20).map(|n| (0..d).map(|j| phi.evaluate(n + j as i64)).collect()).collect();
            ensure!(dense_nullspace(&rows, d).is_empty(), "{phi} has an annihilator of degree below {d}");
        }
    }
    for _ in 0..200 {
        let f = random_laurent(&mut r, -2, 2);
        let g = random_laurent(&mut r, -1, 2);
        let phi = random_exp(&mut r);
        ensure!(phi.shift(&f).shift(&g) == phi.shift(&(&f * &g)), "shift composition fails for {phi}, {f}, {g}");
        let n = r.gen_range(-6..=6);
        let o = oracle();
        ensure!(o.shift(&f).evaluate(n) == shifted_value(&f, &o, n), "oracle shift fails at {n} for {f}");
    }
    let rules = [OracleRule::half_square_power(2).unwrap(), OracleRule::half_square_power(3).unwrap(), OracleRule::AbsFactorial];
    let mut lemma = 0;
    for _ in 0..20 {
        let f = loop {
            let f = random_laurent(&mut r, 0, 3);
            if !f.is_zero() {
                break f;
            }
        };
        for rule in rules {
            let c = Functional::oracle(rule, false).shift(&f).classify(4, Window::new(-12, 12)).map_err(|e| e.to_string())?;
            ensure!(matches!(c, Classification::NotInEDeclared(_)), "{rule} shifted by {f}: {c:?}");
            lemma += 1;
        }
    }
    Ok(format!(
        "{} annihilators checked, 200 shift compositions, {lemma} shifted oracles outside E at degree 4",
        functionals.len()
    ))
}

fn c10_sl2_record() -> Outcome {
    let h = |k| PbwMonomial::from_factors([(Letter::H, k)]);
    let expected = ModuleElement::from_terms([(h(1), s(1)), (h(0), s(-2))]);
    for level in [0, 1] {
        let setup = WhittakerSetup::sl2_e(geometric(2), s(level)).unwrap();
        let v = simplicity_verdict(&setup, &SearchParams::defaults(&setup)).map_err(|e| e.to_string())?;
        ensure!(v.status == Status::Reducible, "level {level}: status {}", v.status);
        ensure!(v.witness.as_ref() == Some(&expected), "level {level}: witness {:?}", v.witness);
        ensure!(Engine::new(&setup).is_whittaker(&expected).unwrap() == Verdict::ExactTrue, "witness not Whittaker");
        ensure!(v.notes.iter().any(|n| n == SL2_DIRECTION_NOTE), "level {level}: direction note missing");
    }
    Ok("levels 0 and 1".into())
}

fn c11_determinism() -> Outcome {
    let dir = corpus_dir();
    let dir = dir.to_str().unwrap();
    let overrides = ParamsJson::default();
    let a = commands::corpus(dir, &overrides, false, 1);
    let b = commands::corpus(dir, &overrides, false, 2);
    ensure!(a.code == 0, "corpus run failed:\n{}{}", a.stdout, a.stderr);
    ensure!(a.stdout == b.stdout && a.stderr == b.stderr, "corpus reports differ");
    let summary = a.stdout.lines().last().unwrap_or_default().to_string();
    Ok(format!("{} bytes identical ({summary})", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("bracket laws", c1_bracket_laws),
        ("module axiom", c2_module_axiom),
        ("length bound for acting degrees", c3_length_bound),
        ("coefficient laws", c4_coefficient_laws),
        ("reducibility witnesses", c5_witnesses),
        ("product Whittaker vectors", c6_products),
        ("oracle search is trivial", c7_oracle_search),
        ("structural filters on the corpus", c8_structural_filters),
        ("functional layer", c9_functional_layer),
        ("sl2 witness and direction note", c10_sl2_record),
        ("determinism", c11_determinism),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id}: FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
