#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use goi_core::compile::comb_to_lambda;
use goi_core::machine::{bang, chain_app, combinator_table, lapp, FeedbackBudget, GoiError};
use goi_core::terms::{CombTerm, Combinator, Involution, LambdaTerm, Move, Side};
use goi_core::types::{principal_type, Mode, PrincipalJudgement};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random closed term over B, C, I, K with `leaves` constants.
pub fn random_comb(rng: &mut StdRng, leaves: usize, with_k: bool) -> CombTerm {
    if leaves <= 1 {
        let pool: &[Combinator] = if with_k {
            &[Combinator::B, Combinator::C, Combinator::I, Combinator::K]
        } else {
            &[Combinator::B, Combinator::C, Combinator::I]
        };
        return CombTerm::Const(*pool.choose(rng).unwrap());
    }
    let left = rng.gen_range(1..leaves);
    CombTerm::app(
        random_comb(rng, left, with_k),
        random_comb(rng, leaves - left, with_k),
    )
}

/// Affine principal judgement of the λ-image of `m`, if typable.
pub fn comb_type(m: &CombTerm) -> Option<PrincipalJudgement> {
    principal_type(&comb_to_lambda(m), Mode::Affine).ok()
}

/// Random closed term with between 1 and `max_leaves` constants.
pub fn random_comb_upto(rng: &mut StdRng, max_leaves: usize, with_k: bool) -> CombTerm {
    let leaves = rng.gen_range(1..=max_leaves);
    random_comb(rng, leaves, with_k)
}

/// Closed typable combinator terms with up to `max_leaves` constants.
pub fn typable_combs(rng: &mut StdRng, count: usize, max_leaves: usize) -> Vec<CombTerm> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = random_comb_upto(rng, max_leaves, true);
        if comb_type(&m).is_some() {
            out.push(m);
        }
    }
    out
}

fn random_path(rng: &mut StdRng, max_len: usize) -> Vec<Side> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| if rng.gen_bool(0.5) { Side::L } else { Side::R })
        .collect()
}

fn comparable(a: &[Side], b: &[Side]) -> bool {
    a.starts_with(b) || b.starts_with(a)
}

/// Random coherent involution: clauses `u·X <-> v·X` (or `u·e <-> v·e`)
/// whose paths form an antichain, so no two left-hand sides overlap.
pub fn random_involution(rng: &mut StdRng) -> Involution {
    let clauses = rng.gen_range(0..=3);
    let mut paths: Vec<Vec<Side>> = Vec::new();
    let mut attempts = 0;
    while paths.len() < 2 * clauses && attempts < 200 {
        attempts += 1;
        let p = random_path(rng, 4);
        if paths.iter().all(|q| !comparable(&p, q)) {
            paths.push(p);
        }
    }
    paths.shuffle(rng);
    let pairs = paths.chunks_exact(2).map(|pq| {
        let tail = if rng.gen_bool(0.8) {
            Move::var("X")
        } else {
            Move::Eps
        };
        (
            Move::with_prefix(&pq[0], tail.clone()),
            Move::with_prefix(&pq[1], tail),
        )
    });
    Involution::from_clauses(pairs.collect::<Vec<_>>())
}

/// Random closed λ-term in which every binder occurs exactly once, or at
/// most once when `affine`.
pub fn random_lambda(rng: &mut StdRng, depth: usize, affine: bool) -> LambdaTerm {
    let mut gen = LambdaGen {
        rng,
        next: 0,
        affine,
    };
    gen.term(Vec::new(), depth)
}

struct LambdaGen<'a> {
    rng: &'a mut StdRng,
    next: usize,
    affine: bool,
}

impl LambdaGen<'_> {
    fn fresh(&mut self) -> String {
        self.next += 1;
        format!("X{}", self.next)
    }

    fn abstraction(&mut self, mut vars: Vec<String>, depth: usize) -> LambdaTerm {
        let x = self.fresh();
        if !(self.affine && self.rng.gen_bool(0.2)) {
            vars.push(x.clone());
        }
        let body = self.term(vars, depth.saturating_sub(1));
        LambdaTerm::lam(x, body)
    }

    fn application(&mut self, mut vars: Vec<String>, depth: usize) -> LambdaTerm {
        vars.shuffle(self.rng);
        let cut = self.rng.gen_range(0..=vars.len());
        let right = vars.split_off(cut);
        let d = depth.saturating_sub(1);
        let fun = if self.rng.gen_bool(0.4) {
            self.abstraction(vars, d)
        } else {
            self.term(vars, d)
        };
        let arg = self.term(right, d);
        LambdaTerm::app(fun, arg)
    }

    /// A term whose free variables are exactly `vars`, each used once.
    fn term(&mut self, vars: Vec<String>, depth: usize) -> LambdaTerm {
        if depth == 0 {
            return match vars.len() {
                0 => {
                    let x = self.fresh();
                    LambdaTerm::lam(x.clone(), LambdaTerm::var(x))
                }
                1 => LambdaTerm::var(vars[0].clone()),
                _ => self.application(vars, 0),
            };
        }
        if vars.len() == 1 && self.rng.gen_bool(0.3) {
            return LambdaTerm::var(vars[0].clone());
        }
        if self.rng.gen_bool(0.45) {
            self.abstraction(vars, depth)
        } else {
            self.application(vars, depth)
        }
    }
}

fn fresh_for(base: &str, avoid: &[String]) -> String {
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !avoid.contains(n))
        .unwrap()
}

/// Capture-avoiding `m[n/x]`.
pub fn substitute(m: &LambdaTerm, x: &str, n: &LambdaTerm) -> LambdaTerm {
    match m {
        LambdaTerm::Var(y) if y == x => n.clone(),
        LambdaTerm::Var(_) | LambdaTerm::Comb(_) => m.clone(),
        LambdaTerm::App(a, b) => LambdaTerm::app(substitute(a, x, n), substitute(b, x, n)),
        LambdaTerm::Bang(a) => LambdaTerm::bang(substitute(a, x, n)),
        LambdaTerm::LinAbs(y, body) | LambdaTerm::BangAbs(y, body) => {
            let rebuild = |y: String, body: LambdaTerm| match m {
                LambdaTerm::LinAbs(..) => LambdaTerm::lam(y, body),
                _ => LambdaTerm::bang_lam(y, body),
            };
            if y == x {
                return m.clone();
            }
            if n.free_vars().contains(y) {
                let mut avoid = n.free_vars();
                avoid.extend(body.free_vars());
                let z = fresh_for(y, &avoid);
                let renamed = substitute(body, y, &LambdaTerm::var(z.clone()));
                return rebuild(z, substitute(&renamed, x, n));
            }
            rebuild(y.clone(), substitute(body, x, n))
        }
    }
}

/// One leftmost-outermost β-step, if any redex exists.
pub fn beta_step(m: &LambdaTerm) -> Option<LambdaTerm> {
    match m {
        LambdaTerm::App(f, a) => {
            if let LambdaTerm::LinAbs(x, body) = f.as_ref() {
                return Some(substitute(body, x, a));
            }
            if let Some(f2) = beta_step(f) {
                return Some(LambdaTerm::app(f2, a.as_ref().clone()));
            }
            beta_step(a).map(|a2| LambdaTerm::app(f.as_ref().clone(), a2))
        }
        LambdaTerm::LinAbs(x, body) => beta_step(body).map(|b| LambdaTerm::lam(x.clone(), b)),
        _ => None,
    }
}

pub fn table(c: Combinator) -> Involution {
    combinator_table().get(c).clone()
}

/// Random elements may feed back forever; such cases are skipped early.
pub const RANDOM_BUDGET: FeedbackBudget = FeedbackBudget {
    max_iterations: 64,
    detect_cycles: false,
};

/// Both sides of each law at `x, y, z`; `None` entries exhausted the budget.
pub fn laws(
    x: &Involution,
    y: &Involution,
    z: &Involution,
) -> Vec<(&'static str, Option<(Involution, Involution)>)> {
    use Combinator::*;
    let app = |fs: &[Involution]| chain_app(fs, RANDOM_BUDGET);
    let both =
        |l: Result<Involution, GoiError>, r: Result<Involution, GoiError>| l.ok().zip(r.ok());
    let (bx, by) = (bang(x), bang(y));
    vec![
        (
            "B",
            both(
                app(&[table(B), x.clone(), y.clone(), z.clone()]),
                app(&[y.clone(), z.clone()]).and_then(|yz| app(&[x.clone(), yz])),
            ),
        ),
        (
            "C",
            both(
                app(&[table(C), x.clone(), y.clone(), z.clone()]),
                app(&[x.clone(), z.clone(), y.clone()]),
            ),
        ),
        ("I", both(app(&[table(I), x.clone()]), Ok(x.clone()))),
        (
            "K",
            both(app(&[table(K), x.clone(), y.clone()]), Ok(x.clone())),
        ),
        (
            "W",
            both(
                app(&[table(W), x.clone(), by.clone()]),
                app(&[x.clone(), by.clone(), by.clone()]),
            ),
        ),
        ("D", both(app(&[table(D), bx.clone()]), Ok(x.clone()))),
        ("d", both(app(&[table(Delta), bx.clone()]), Ok(bang(&bx)))),
        (
            "F",
            both(
                app(&[table(F), bx, by]),
                lapp(x, y, RANDOM_BUDGET).map(|xy| bang(&xy)),
            ),
        ),
    ]
}
