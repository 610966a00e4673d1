//! Exhaustive and sampled consistency checks for ΔS, ΔC^op and the functors out of them.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{cyclic_closure, hom_count, iota_word, psi_cyc_word, psi_tilde_sym, has_row_property, CycGen, DeltaSMorphism};

/// Outcome of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: u64,
    /// The first few failures, if any.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Settings for [`run_all`].
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Objects `[0]..=[bound]` are enumerated exhaustively.
    pub exhaustive_bound: usize,
    /// Objects up to this size are sampled.
    pub random_bound: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { exhaustive_bound: 3, random_bound: 6, samples: 2000, seed: 0 }
    }
}

const MAX_REPORTED: usize = 5;

struct Collector {
    name: &'static str,
    checked: u64,
    failures: Vec<String>,
}

impl Collector {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_REPORTED {
            self.failures.push(msg());
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport { name: self.name, checked: self.checked, failures: self.failures }
    }
}

/// A uniformly random morphism `[n] -> [m]`.
pub fn random_morphism<R: Rng>(rng: &mut R, n: usize, m: usize) -> DeltaSMorphism {
    let mut perm: Vec<usize> = (0..=n).collect();
    perm.shuffle(rng);
    let mut g: Vec<usize> = (0..=n).map(|_| rng.gen_range(0..=m)).collect();
    g.sort_unstable();
    let mut monomials = vec![Vec::new(); m + 1];
    for (p, &j) in g.iter().enumerate() {
        monomials[j].push(perm[p]);
    }
    DeltaSMorphism::new(n, monomials).expect("random morphism is valid")
}

/// A random composable word of ΔC^op generators staying within `[0]..=[bound]`.
pub fn random_word<R: Rng>(rng: &mut R, bound: usize, len: usize) -> Vec<CycGen> {
    let mut n = rng.gen_range(0..=bound);
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let choices: Vec<CycGen> = CycGen::all_with_source(n).into_iter().filter(|g| g.target() <= bound).collect();
        let g = *choices.choose(rng).expect("t_n is always available");
        n = g.target();
        word.push(g);
    }
    word
}

/// ΔS generators between objects up to `bound`: images of the ΔC^op generators and adjacent transpositions.
pub fn deltas_generators(bound: usize) -> Vec<DeltaSMorphism> {
    let mut gens: BTreeSet<DeltaSMorphism> = BTreeSet::new();
    for n in 0..=bound {
        for g in CycGen::all_with_source(n) {
            if g.target() <= bound {
                gens.insert(g.iota());
            }
        }
        for i in 0..n {
            let mut monomials: Vec<Vec<usize>> = (0..=n).map(|k| vec![k]).collect();
            monomials.swap(i, i + 1);
            gens.insert(DeltaSMorphism::new(n, monomials).expect("transposition"));
        }
    }
    gens.into_iter().collect()
}

fn homs_upto(bound: usize) -> Vec<Vec<Vec<DeltaSMorphism>>> {
    (0..=bound).map(|n| (0..=bound).map(|m| DeltaSMorphism::enumerate(n, m)).collect()).collect()
}

/// Associativity and the partition invariant.
///
/// Exhaustively, `(f1 ∘ f2) ∘ g = f1 ∘ (f2 ∘ g)` is checked for all composable `f1, f2` and
/// generators `g`; by induction on word length this gives associativity for all triples.
pub fn associativity(cfg: &SuiteConfig) -> SuiteReport {
    let b = cfg.exhaustive_bound;
    let homs = homs_upto(b);
    let gens = deltas_generators(b);
    let mut c = Collector::new("associativity");
    // f2: [x] -> [y], f1: [y] -> [z], g: [w] -> [x].
    let results: Vec<(u64, Vec<String>)> = (0..=b)
        .flat_map(|x| (0..=b).map(move |y| (x, y)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(x, y)| {
            let mut checked = 0u64;
            let mut fails = Vec::new();
            let gx: Vec<&DeltaSMorphism> = gens.iter().filter(|g| g.target() == x).collect();
            for f2 in &homs[x][y] {
                let f2g: Vec<DeltaSMorphism> = gx.iter().map(|g| f2.compose(g).unwrap()).collect();
                for z in 0..=b {
                    for f1 in &homs[y][z] {
                        let f12 = f1.compose(f2).unwrap();
                        if DeltaSMorphism::new(f12.source(), f12.monomials().to_vec()).is_err() && fails.len() < MAX_REPORTED {
                            fails.push(format!("partition broken by {f1} ∘ {f2}"));
                        }
                        for (g, f2g) in gx.iter().zip(&f2g) {
                            checked += 1;
                            if f12.compose(g).unwrap() != f1.compose(f2g).unwrap() && fails.len() < MAX_REPORTED {
                                fails.push(format!("({f1} ∘ {f2}) ∘ {g} differs from {f1} ∘ ({f2} ∘ {g})"));
                            }
                        }
                    }
                }
            }
            (checked, fails)
        })
        .collect();
    for (checked, fails) in results {
        c.checked += checked;
        for f in fails {
            if c.failures.len() < MAX_REPORTED {
                c.failures.push(f);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let r = cfg.random_bound;
    for _ in 0..cfg.samples {
        let (a, bb, cc, d) = (rng.gen_range(0..=r), rng.gen_range(0..=r), rng.gen_range(0..=r), rng.gen_range(0..=r));
        let f3 = random_morphism(&mut rng, a, bb);
        let f2 = random_morphism(&mut rng, bb, cc);
        let f1 = random_morphism(&mut rng, cc, d);
        let left = f1.compose(&f2).unwrap().compose(&f3).unwrap();
        let right = f1.compose(&f2.compose(&f3).unwrap()).unwrap();
        c.check(left == right, || format!("random triple {f1}, {f2}, {f3} is not associative"));
        c.check(DeltaSMorphism::identity(d).compose(&f1).unwrap() == f1, || format!("left identity fails for {f1}"));
        c.check(f1.compose(&DeltaSMorphism::identity(cc)).unwrap() == f1, || format!("right identity fails for {f1}"));
    }
    c.finish()
}

/// `f = g ∘ σ` round trip and uniqueness.
pub fn factorization(cfg: &SuiteConfig) -> SuiteReport {
    let mut c = Collector::new("factorization");
    let check_one = |c: &mut Collector, f: &DeltaSMorphism| {
        let fac = f.factorize();
        let monotone = fac.g.windows(2).all(|w| w[0] <= w[1]);
        let mut sorted = fac.sigma.clone();
        sorted.sort_unstable();
        let perm = sorted == (0..=f.source()).collect::<Vec<_>>();
        let back = DeltaSMorphism::recompose(&fac, f.target());
        let under: Vec<usize> = (0..=f.source()).map(|i| fac.g[fac.sigma[i]]).collect();
        c.check(
            monotone && perm && back.as_ref() == Ok(f) && under == f.underlying_map(),
            || format!("factorization of {f} does not round-trip"),
        );
    };
    let b = cfg.exhaustive_bound;
    for n in 0..=b {
        for m in 0..=b {
            let all = DeltaSMorphism::enumerate(n, m);
            let distinct: BTreeSet<_> = all.iter().map(|f| {
                let fac = f.factorize();
                (fac.g, fac.sigma)
            }).collect();
            c.check(distinct.len() == all.len() && all.len() as u128 == hom_count(n, m), || {
                format!("Hom([{n}], [{m}]) has {} morphisms and {} factorizations", all.len(), distinct.len())
            });
            for f in &all {
                check_one(&mut c, f);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0002);
    for _ in 0..cfg.samples {
        let (n, m) = (rng.gen_range(0..=cfg.random_bound), rng.gen_range(0..=cfg.random_bound));
        let f = random_morphism(&mut rng, n, m);
        check_one(&mut c, &f);
    }
    c.finish()
}

/// `|Aut_ΔS([n])| = (n+1)!`, `|Aut_ΔC([n])| = n+1`, and the cyclic criterion against the generated closure.
pub fn aut_counts(cfg: &SuiteConfig) -> SuiteReport {
    let mut c = Collector::new("aut-counts");
    let top = cfg.exhaustive_bound.max(4);
    for n in 0..=top {
        let auts = DeltaSMorphism::automorphisms(n);
        let fact: usize = (1..=n + 1).product();
        c.check(auts.len() == fact, || format!("|Aut_ΔS([{n}])| = {} instead of {fact}", auts.len()));
        let cyc = auts.iter().filter(|f| f.is_cyclic()).count();
        c.check(cyc == n + 1, || format!("|Aut_ΔC([{n}])| = {cyc} instead of {}", n + 1));
    }
    let b = cfg.exhaustive_bound;
    let closure = cyclic_closure(b);
    for n in 0..=b {
        for m in 0..=b {
            for f in DeltaSMorphism::enumerate(n, m) {
                c.check(f.is_cyclic() == closure.contains(&f), || format!("cyclic criterion disagrees with closure on {f}"));
            }
        }
    }
    c.finish()
}

/// `Ψ_sym ∘ ι = Ψ_cyc^op` and contravariance of `Ψ_sym`.
pub fn psi_diagram(cfg: &SuiteConfig) -> SuiteReport {
    let mut c = Collector::new("psi-diagram");
    let top = cfg.exhaustive_bound.max(4);
    for n in 0..=top {
        for g in CycGen::all_with_source(n) {
            c.check(g.iota().psi_sym() == g.psi_cyc(), || format!("Ψ_sym(ι({g})) differs from Ψ_cyc({g})"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0004);
    for _ in 0..cfg.samples {
        let len = rng.gen_range(1..=8);
        let w = random_word(&mut rng, cfg.random_bound, len);
        let f = iota_word(&w).unwrap();
        c.check(f.psi_sym() == psi_cyc_word(&w).unwrap(), || format!("diagram fails on word {w:?}"));
        c.check(f.is_cyclic(), || format!("ι of {w:?} is not cyclic"));
        let (a, b, d) = (
            rng.gen_range(0..=cfg.random_bound),
            rng.gen_range(0..=cfg.random_bound),
            rng.gen_range(0..=cfg.random_bound),
        );
        let f2 = random_morphism(&mut rng, a, b);
        let f1 = random_morphism(&mut rng, b, d);
        let lhs = f1.compose(&f2).unwrap().psi_sym();
        let rhs = f2.psi_sym().compose(&f1.psi_sym()).unwrap();
        c.check(lhs == rhs, || format!("Ψ_sym is not contravariant on {f1}, {f2}"));
    }
    c.finish()
}

/// One 1 per row of every abelianized matrix, and `A(f1 ∘ f2) = A(f2) A(f1)`.
pub fn row_property(cfg: &SuiteConfig) -> SuiteReport {
    let mut c = Collector::new("row-property");
    let top = cfg.exhaustive_bound.max(4);
    for n in 0..=top {
        for m in 0..=top {
            for f in DeltaSMorphism::enumerate(n, m) {
                c.check(has_row_property(&f), || format!("row property fails for {f}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0005);
    for _ in 0..cfg.samples {
        let r = cfg.random_bound;
        let (a, b, d) = (rng.gen_range(0..=r), rng.gen_range(0..=r), rng.gen_range(0..=r));
        let f2 = random_morphism(&mut rng, a, b);
        let f1 = random_morphism(&mut rng, b, d);
        let lhs = f1.compose(&f2).unwrap().abelianize_psi_sym();
        let rhs = f2.abelianize_psi_sym().mul(&f1.abelianize_psi_sym()).unwrap();
        c.check(lhs == rhs, || format!("abelianization is not contravariant on {f1}, {f2}"));
        c.check(has_row_property(&f1), || format!("row property fails for {f1}"));
    }
    c.finish()
}

/// `p ∘ Ψ̃_sym = Ψ_sym` with decorations preserved.
pub fn lifting_square(cfg: &SuiteConfig) -> SuiteReport {
    let mut c = Collector::new("lifting-square");
    let mut check = |f: &DeltaSMorphism| {
        for m in [0i64, 1, 2, -1] {
            let ok = match psi_tilde_sym(f, m) {
                Ok(d) => d.forget() == &f.psi_sym() && d.respects_decorations(),
                Err(_) => false,
            };
            c.check(ok, || format!("lift with decoration {m} fails for {f}"));
        }
    };
    let b = cfg.exhaustive_bound;
    for n in 0..=b {
        for m in 0..=b {
            for f in DeltaSMorphism::enumerate(n, m) {
                check(&f);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0006);
    for _ in 0..cfg.samples {
        let r = cfg.random_bound;
        let (n, m) = (rng.gen_range(0..=r), rng.gen_range(0..=r));
        let f = random_morphism(&mut rng, n, m);
        check(&f);
    }
    c.finish()
}

/// The six suites, in a fixed order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    vec![
        associativity(cfg),
        factorization(cfg),
        aut_counts(cfg),
        psi_diagram(cfg),
        row_property(cfg),
        lifting_square(cfg),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bound_suites_pass() {
        let cfg = SuiteConfig { exhaustive_bound: 2, random_bound: 4, samples: 200, seed: 7 };
        for r in run_all(&cfg) {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn generators_include_transpositions() {
        let gens = deltas_generators(2);
        assert!(gens.contains(&DeltaSMorphism::parse("x1|x0|x2").unwrap()));
        assert!(gens.contains(&DeltaSMorphism::parse("x0|1|x1").unwrap()));
    }
}
