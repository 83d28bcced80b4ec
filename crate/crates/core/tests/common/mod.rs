#![allow(dead_code)]

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use whittaker_core::lie::{bracket_generators, Generator, LieElement, Sl2Basis};
use whittaker_core::pbw::{Letter, ModuleElement, PairKind, PbwMonomial, WhittakerSetup};
use whittaker_core::{ExpPoly, Functional, OracleRule, Scalar};

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn geometric(l: i64) -> Functional {
    ExpPoly::geometric(s(l)).unwrap().into()
}

pub fn identity() -> Functional {
    ExpPoly::term(s(1), 1, s(1)).unwrap().into()
}

/// n·2ⁿ + 3ⁿ
pub fn mixed() -> Functional {
    ExpPoly::new([(s(2), vec![s(0), s(1)]), (s(3), vec![s(1)])]).unwrap().into()
}

pub fn oracle() -> Functional {
    Functional::oracle(OracleRule::half_square_power(2).unwrap(), false)
}

pub fn random_functional(rng: &mut ChaCha8Rng, allow_oracle: bool) -> Functional {
    match rng.gen_range(0..if allow_oracle { 6 } else { 5 }) {
        0 => Functional::zero(),
        1 => geometric(*[-2, -1, 1, 2, 3].choose(rng).unwrap()),
        2 => identity(),
        3 => mixed(),
        4 => ExpPoly::term(s(rng.gen_range(1..=2)), rng.gen_range(0..=2), s(rng.gen_range(-3..=3)))
            .unwrap()
            .into(),
        _ => oracle(),
    }
}

pub fn random_setup(rng: &mut ChaCha8Rng, pair: PairKind, allow_oracle: bool) -> WhittakerSetup {
    let n = rng.gen_range(1..=2);
    let psi = |rng: &mut ChaCha8Rng| (n..=2 * n).map(|i| (i, random_functional(rng, allow_oracle))).collect::<Vec<_>>();
    match pair {
        PairKind::GeqN => WhittakerSetup::geq_n(n, psi(rng)).unwrap(),
        PairKind::GMinus => WhittakerSetup::g_minus(random_functional(rng, allow_oracle)).unwrap(),
        PairKind::VirGeqN => {
            let p = psi(rng);
            WhittakerSetup::vir_geq_n(n, p, random_functional(rng, allow_oracle)).unwrap()
        }
        PairKind::Sl2E => WhittakerSetup::sl2_e(random_functional(rng, allow_oracle), s(rng.gen_range(-2..=2))).unwrap(),
    }
}

pub const PAIRS: [PairKind; 4] = [PairKind::GeqN, PairKind::GMinus, PairKind::VirGeqN, PairKind::Sl2E];

pub fn random_generator(rng: &mut ChaCha8Rng, setup: &WhittakerSetup) -> Generator {
    let k = rng.gen_range(-3..=3);
    match setup.pair() {
        PairKind::GeqN => {
            let n = setup.n().unwrap();
            Generator::WittD { n: rng.gen_range(-1..=2 * n + 1), k }
        }
        PairKind::GMinus => Generator::WittD { n: rng.gen_range(-1..=3), k },
        PairKind::VirGeqN => {
            let n = setup.n().unwrap();
            if rng.gen_bool(0.1) {
                Generator::VirC { k }
            } else {
                Generator::VirD { n: rng.gen_range(-2..=2 * n + 1), k }
            }
        }
        PairKind::Sl2E => match rng.gen_range(0..7) {
            0 | 1 => Generator::Sl2 { x: Sl2Basis::E, k },
            2 | 3 => Generator::Sl2 { x: Sl2Basis::F, k },
            4 | 5 => Generator::Sl2 { x: Sl2Basis::H, k },
            _ => Generator::Sl2K,
        },
    }
}

pub fn random_lie(rng: &mut ChaCha8Rng, setup: &WhittakerSetup) -> LieElement {
    let terms = rng.gen_range(1..=2);
    LieElement::from_terms((0..terms).map(|_| (random_generator(rng, setup), s(rng.gen_range(-3..=3)))))
}

/// Free letters of a pair, with a bounded degree range for the unbounded ones.
pub fn free_letters(setup: &WhittakerSetup) -> Vec<Letter> {
    match setup.pair() {
        PairKind::GeqN => (-1..setup.n().unwrap()).map(Letter::D).collect(),
        PairKind::GMinus => (0..=3).map(Letter::D).collect(),
        PairKind::VirGeqN => (-2..setup.n().unwrap()).map(Letter::D).collect(),
        PairKind::Sl2E => vec![Letter::F, Letter::H],
    }
}

pub fn random_monomial(rng: &mut ChaCha8Rng, setup: &WhittakerSetup, lth_max: usize) -> PbwMonomial {
    let letters = free_letters(setup);
    let lth = rng.gen_range(0..=lth_max);
    PbwMonomial::from_factors((0..lth).map(|_| (*letters.choose(rng).unwrap(), rng.gen_range(-3..=3))))
}

pub fn random_element(rng: &mut ChaCha8Rng, setup: &WhittakerSetup, lth_max: usize) -> ModuleElement {
    let terms = rng.gen_range(1..=3);
    ModuleElement::from_terms((0..terms).map(|_| (random_monomial(rng, setup, lth_max), s(rng.gen_range(-3..=3)))))
}

/// An independent rewriter: words of generators applied to the cyclic
/// vector, normalized by moving the rightmost acting generator onto the
/// cyclic vector and bubble-sorting free generators, one bracket at a time.
pub struct BruteForce<'s> {
    setup: &'s WhittakerSetup,
    memo: HashMap<Vec<Generator>, ModuleElement>,
}

enum Role {
    Free(Letter, i64),
    Acting(Scalar),
    Central(Scalar),
}

impl<'s> BruteForce<'s> {
    pub fn new(setup: &'s WhittakerSetup) -> Self {
        BruteForce { setup, memo: HashMap::new() }
    }

    fn role(&self, g: &Generator) -> Role {
        let st = self.setup;
        let psi = |n: i64, k: i64| st.psi(n).evaluate(k);
        match (st.pair(), *g) {
            (PairKind::GeqN, Generator::WittD { n, k }) | (PairKind::VirGeqN, Generator::VirD { n, k }) => {
                let big_n = st.n().unwrap();
                if n >= big_n {
                    Role::Acting(if n <= 2 * big_n { psi(n, k) } else { s(0) })
                } else {
                    Role::Free(Letter::D(n), k)
                }
            }
            (PairKind::VirGeqN, Generator::VirC { k }) => Role::Central(st.phi_c().evaluate(k)),
            (PairKind::GMinus, Generator::WittD { n: -1, k }) => Role::Acting(st.phi().evaluate(k)),
            (PairKind::GMinus, Generator::WittD { n, k }) => Role::Free(Letter::D(n), k),
            (PairKind::Sl2E, Generator::Sl2 { x: Sl2Basis::E, k }) => Role::Acting(st.phi().evaluate(k)),
            (PairKind::Sl2E, Generator::Sl2 { x: Sl2Basis::F, k }) => Role::Free(Letter::F, k),
            (PairKind::Sl2E, Generator::Sl2 { x: Sl2Basis::H, k }) => Role::Free(Letter::H, k),
            (PairKind::Sl2E, Generator::Sl2K) => Role::Central(st.level().clone()),
            (p, g) => panic!("{g:?} is not in {p:?}"),
        }
    }

    fn swapped(&mut self, word: &[Generator], i: usize) -> ModuleElement {
        let mut w = word.to_vec();
        w.swap(i, i + 1);
        let mut out = self.normalize(&w);
        let br = bracket_generators(self.setup.algebra(), &word[i], &word[i + 1]).unwrap();
        for (g, c) in br.iter() {
            let mut w: Vec<Generator> = word[..i].to_vec();
            w.push(*g);
            w.extend_from_slice(&word[i + 2..]);
            out.add_scaled(&self.normalize(&w), c);
        }
        out
    }

    /// `word[0] word[1] ⋯ v` in normal form.
    pub fn normalize(&mut self, word: &[Generator]) -> ModuleElement {
        if let Some(r) = self.memo.get(word) {
            return r.clone();
        }
        let roles: Vec<Role> = word.iter().map(|g| self.role(g)).collect();
        let result = if let Some(i) = roles.iter().position(|r| matches!(r, Role::Central(_))) {
            let Role::Central(c) = &roles[i] else { unreachable!() };
            let mut w = word.to_vec();
            w.remove(i);
            self.normalize(&w).scale(c)
        } else if let Some(i) = roles.iter().rposition(|r| matches!(r, Role::Acting(_))) {
            if i + 1 == word.len() {
                let Role::Acting(c) = &roles[i] else { unreachable!() };
                self.normalize(&word[..i]).scale(c)
            } else {
                self.swapped(word, i)
            }
        } else {
            let key = |r: &Role| match r {
                Role::Free(l, k) => (*l, *k),
                _ => unreachable!(),
            };
            match (0..word.len().saturating_sub(1)).find(|&i| key(&roles[i]) < key(&roles[i + 1])) {
                Some(i) => self.swapped(word, i),
                None => ModuleElement::monomial(PbwMonomial::from_factors(roles.iter().map(key))),
            }
        };
        self.memo.insert(word.to_vec(), result.clone());
        result
    }

    /// Linear extension over Lie-element words.
    pub fn word(&mut self, word: &[LieElement], u: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        let mut expand: Vec<(Vec<Generator>, Scalar)> = vec![(Vec::new(), s(1))];
        for x in word {
            let mut next = Vec::new();
            for (w, c) in &expand {
                for (g, d) in x.iter() {
                    let mut w2 = w.clone();
                    w2.push(*g);
                    next.push((w2, c * d));
                }
            }
            expand = next;
        }
        for (w, c) in expand {
            for (m, d) in u.iter() {
                let mut full = w.clone();
                full.extend(m_to_word(self.setup, m));
                out.add_scaled(&self.normalize(&full), &(&c * d));
            }
        }
        out
    }
}

fn m_to_word(setup: &WhittakerSetup, m: &PbwMonomial) -> Vec<Generator> {
    m.letters()
        .iter()
        .map(|&(l, k)| match (setup.pair(), l) {
            (PairKind::VirGeqN, Letter::D(n)) => Generator::VirD { n, k },
            (_, Letter::D(n)) => Generator::WittD { n, k },
            (_, Letter::F) => Generator::Sl2 { x: Sl2Basis::F, k },
            (_, Letter::H) => Generator::Sl2 { x: Sl2Basis::H, k },
        })
        .collect()
}
