use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, multinomial, GaussianRational, MultiIndex, Rational};
use crate::bergman::{terms_to_symbol, QuasiHomSymbol, SymbolJson, TermJson};
use crate::error::{Error, Result};
use crate::symbolic::{is_pluriharmonic, BiPolynomial, Monomial};

/// `phi = f + conj(g)` with `f, g` holomorphic and `g(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PluriharmonicPair {
    pub f: BiPolynomial,
    pub g: BiPolynomial,
}

impl PluriharmonicPair {
    pub fn to_bipoly(&self) -> BiPolynomial {
        self.f.add(&self.g.conj())
    }
}

/// Holomorphic part (with the constant) and conjugated antiholomorphic part.
pub fn split_pluriharmonic(p: &BiPolynomial) -> Result<PluriharmonicPair> {
    if let (false, Some(m)) = is_pluriharmonic(p) {
        return Err(Error::NotPluriharmonic(
            BiPolynomial::monomial(p.dim(), GaussianRational::one(), m.alpha, m.beta).to_string(),
        ));
    }
    let f = p.filter(|m| m.beta.is_zero());
    let g = p.filter(|m| m.alpha.is_zero() && !m.beta.is_zero()).conj();
    Ok(PluriharmonicPair { f, g })
}

/// One product `T_phi T_psi` with `phi = f + conj(g)`, `psi = u + conj(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioPair {
    pub f: BiPolynomial,
    pub g: BiPolynomial,
    pub u: BiPolynomial,
    pub v: BiPolynomial,
}

impl ScenarioPair {
    pub fn phi(&self) -> BiPolynomial {
        self.f.add(&self.g.conj())
    }

    pub fn psi(&self) -> BiPolynomial {
        self.u.add(&self.v.conj())
    }
}

/// `sum_j T_{phi_j} T_{psi_j} = T_h + sum_l x_l (tensor) y_l`, as a claim to test.
#[derive(Clone, Debug, PartialEq)]
pub struct BHScenario {
    pub dim: usize,
    pub pairs: Vec<ScenarioPair>,
    pub h: QuasiHomSymbol,
    pub rank_one: Vec<(BiPolynomial, BiPolynomial)>,
}

impl BHScenario {
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        let mut polys: Vec<(&str, &BiPolynomial)> = Vec::new();
        for p in &self.pairs {
            polys.extend([("f", &p.f), ("g", &p.g), ("u", &p.u), ("v", &p.v)]);
        }
        for (x, y) in &self.rank_one {
            polys.extend([("x", x), ("y", y)]);
        }
        for (name, p) in polys {
            if p.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
            }
            if !p.is_holomorphic() {
                return Err(Error::NotHolomorphic(format!("{name} = {p}")));
            }
        }
        if self.h.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.h.dim() });
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = ScenarioJson {
            dimension: self.dim,
            h: SymbolJson::from(&self.h).terms,
            pairs: self
                .pairs
                .iter()
                .map(|p| PairJson {
                    f: bipoly_terms(&p.f),
                    g: bipoly_terms(&p.g),
                    u: bipoly_terms(&p.u),
                    v: bipoly_terms(&p.v),
                })
                .collect(),
            rank_one: self
                .rank_one
                .iter()
                .map(|(x, y)| RankOneJson { x: bipoly_terms(x), y: bipoly_terms(y) })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: ScenarioJson = serde_json::from_value(v.clone())?;
        let n = j.dimension;
        if n == 0 {
            return Err(Error::Parse("dimension must be at least 1".into()));
        }
        let pairs = j
            .pairs
            .iter()
            .map(|p| {
                Ok(ScenarioPair {
                    f: terms_bipoly(n, &p.f)?,
                    g: terms_bipoly(n, &p.g)?,
                    u: terms_bipoly(n, &p.u)?,
                    v: terms_bipoly(n, &p.v)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rank_one = j
            .rank_one
            .iter()
            .map(|r| Ok((terms_bipoly(n, &r.x)?, terms_bipoly(n, &r.y)?)))
            .collect::<Result<Vec<_>>>()?;
        let sc = BHScenario { dim: n, pairs, h: terms_to_symbol(n, &j.h)?, rank_one };
        sc.validate()?;
        Ok(sc)
    }
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    #[serde(default)]
    f: Vec<TermJson>,
    #[serde(default)]
    g: Vec<TermJson>,
    #[serde(default)]
    u: Vec<TermJson>,
    #[serde(default)]
    v: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct RankOneJson {
    x: Vec<TermJson>,
    y: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct ScenarioJson {
    dimension: usize,
    #[serde(default)]
    h: Vec<TermJson>,
    #[serde(default)]
    pairs: Vec<PairJson>,
    #[serde(default)]
    rank_one: Vec<RankOneJson>,
}

pub fn bipoly_terms(p: &BiPolynomial) -> Vec<TermJson> {
    p.terms()
        .map(|(m, c)| TermJson {
            alpha: m.alpha.components().to_vec(),
            beta: m.beta.components().to_vec(),
            coeff: c.clone(),
            log: false,
            power: 0,
        })
        .collect()
}

pub fn terms_bipoly(n: usize, terms: &[TermJson]) -> Result<BiPolynomial> {
    let mut p = BiPolynomial::zero(n);
    for t in terms {
        if t.log || t.power != 0 {
            return Err(Error::Parse("polynomial terms cannot carry t powers or log(t)".into()));
        }
        if t.alpha.len() != n || t.beta.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: t.alpha.len() });
        }
        p.add_term(Monomial::new(t.alpha.clone().into(), t.beta.clone().into()), t.coeff.clone());
    }
    Ok(p)
}

/// `(1 - |z|^2)^(N+1) - 1` expanded, with the binomial weights in place.
fn defining_power_minus_one(n: usize) -> BiPolynomial {
    let mut p = BiPolynomial::zero(n);
    for k in 1..=n as u32 + 1 {
        for a in MultiIndex::of_degree(n, k) {
            let mut c = binomial(n as u32 + 1, k) * multinomial(&a);
            if k % 2 == 1 {
                c = -c;
            }
            p.add_term(Monomial::new(a.clone(), a), GaussianRational::from_rational(Rational::from_integer(c)));
        }
    }
    p
}

/// A scenario satisfying both conditions of the theorem by construction.
///
/// The products `f_j conj(v_j)` are the terms of
/// `sum_l (x_l - x_l(0)) conj(y_l - y_l(0)) + ((1-|z|^2)^(N+1) - 1) x_l conj(y_l)`,
/// one pair per term in monomial order. `g_list` and `u_list` are padded with zeros.
pub fn construct_bh_example(
    n: usize,
    x_list: &[BiPolynomial],
    y_list: &[BiPolynomial],
    g_list: &[BiPolynomial],
    u_list: &[BiPolynomial],
) -> Result<BHScenario> {
    if x_list.len() != y_list.len() {
        return Err(Error::PreconditionViolation("x_list and y_list differ in length".into()));
    }
    let tail = defining_power_minus_one(n);
    let mut target = BiPolynomial::zero(n);
    for (x, y) in x_list.iter().zip(y_list) {
        let xc = x.sub(&BiPolynomial::constant(n, x.at_zero()));
        let yc = y.sub(&BiPolynomial::constant(n, y.at_zero()));
        target = target.add(&xc.mul(&yc.conj())).add(&tail.mul(&x.mul(&y.conj())));
    }
    let zero = BiPolynomial::zero(n);
    let pairs: Vec<ScenarioPair> = target
        .terms()
        .enumerate()
        .map(|(j, (m, c))| ScenarioPair {
            f: BiPolynomial::monomial(n, c.clone(), m.alpha.clone(), MultiIndex::zero(n)),
            g: g_list.get(j).cloned().unwrap_or_else(|| zero.clone()),
            u: u_list.get(j).cloned().unwrap_or_else(|| zero.clone()),
            v: BiPolynomial::monomial(n, GaussianRational::one(), m.beta.clone(), MultiIndex::zero(n)),
        })
        .collect();
    let mut h = BiPolynomial::zero(n);
    for p in &pairs {
        h = h.add(&p.phi().mul(&p.psi()));
    }
    let mut xy = BiPolynomial::zero(n);
    for (x, y) in x_list.iter().zip(y_list) {
        xy = xy.add(&x.mul(&y.conj()));
    }
    h = h.sub(&BiPolynomial::defining(n).pow(n as u32 + 1).mul(&xy));
    let sc = BHScenario {
        dim: n,
        pairs,
        h: QuasiHomSymbol::from_bipoly(&h),
        rank_one: x_list.iter().cloned().zip(y_list.iter().cloned()).collect(),
    };
    sc.validate()?;
    Ok(sc)
}

fn small_coeff(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let re = rng.gen_range(-2..=2);
        let im = rng.gen_range(-1..=1);
        let c = GaussianRational::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()));
        if !c.is_zero() {
            return c;
        }
    }
}

/// Holomorphic polynomial of degree at most 1 with small Gaussian coefficients.
fn random_affine(rng: &mut ChaCha8Rng, n: usize) -> BiPolynomial {
    let mut p = BiPolynomial::zero(n);
    for a in MultiIndex::up_to_degree(n, 1) {
        if rng.gen_bool(0.6) {
            p.add_term(Monomial::new(a, MultiIndex::zero(n)), small_coeff(rng));
        }
    }
    p
}

/// Seeded scenario for the biconditional test. Even seeds keep the
/// construction intact; odd seeds perturb `h` or drop a rank-one term, so
/// both sides of the equivalence are exercised.
pub fn random_bh_scenario(seed: u64, n: usize) -> Result<BHScenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.gen_range(1..=2);
    let xs: Vec<_> = (0..r).map(|_| random_affine(&mut rng, n)).collect();
    let ys: Vec<_> = (0..r).map(|_| random_affine(&mut rng, n)).collect();
    let gs: Vec<_> = (0..2).map(|_| random_affine(&mut rng, n)).collect();
    let us: Vec<_> = (0..2).map(|_| random_affine(&mut rng, n)).collect();
    let mut sc = construct_bh_example(n, &xs, &ys, &gs, &us)?;
    if seed % 2 == 1 {
        match rng.gen_range(0..3) {
            0 => {
                // a mixed perturbation breaks both conditions
                let j = rng.gen_range(0..n);
                let bump = QuasiHomSymbol::from_bipoly(&BiPolynomial::z(n, j).mul(&BiPolynomial::zbar(n, j)));
                sc.h = sc.h.add(&bump.scale(&small_coeff(&mut rng)))?;
            }
            1 => {
                // a pluriharmonic perturbation keeps (i) but breaks (ii)
                let bump = QuasiHomSymbol::from_bipoly(&BiPolynomial::zbar(n, rng.gen_range(0..n)));
                sc.h = sc.h.add(&bump.scale(&small_coeff(&mut rng)))?;
            }
            _ => {
                sc.rank_one.pop();
            }
        }
    }
    Ok(sc)
}
