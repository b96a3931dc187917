//! The verification ledger run by `lca report`: every algebra in a file is
//! checked against the structure results that apply to it.

use std::collections::BTreeMap;

use lca_core::confmap::dl_map;
use lca_core::derivspaces::{
    delta_phi, inner_quotient_dimension, inner_space, solve_space, space_contains, space_equal,
    span_contains, EquationKind,
};
use lca_core::dsl::SourceFile;
use lca_core::triplehom::{is_kind, split_decompose, MapKind};
use lca_core::{ConformalAlgebra, ConformalMap, Error, Poly, SolutionSpace, Var};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The claim does not apply because a hypothesis could not be verified.
    Skip,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub claim: String,
    /// The statement being reproduced, as a formula.
    pub anchor: &'static str,
    pub status: Status,
    pub bounds: Option<(usize, usize)>,
    pub detail: Option<String>,
}

impl Entry {
    pub fn to_json(&self) -> Value {
        json!({
            "claim": self.claim,
            "anchor": self.anchor,
            "status": self.status.name(),
            "bounds": self.bounds.map(|(d, x)| json!({ "deg_d": d, "deg_x": x })),
            "detail": self.detail,
        })
    }
}

/// Solution spaces keyed by `(kind, deg_d, deg_x)`, computed once.
struct Spaces<'a> {
    alg: &'a ConformalAlgebra,
    cache: BTreeMap<(&'static str, usize, usize), SolutionSpace>,
}

impl<'a> Spaces<'a> {
    fn new(alg: &'a ConformalAlgebra) -> Self {
        Spaces {
            alg,
            cache: BTreeMap::new(),
        }
    }

    fn get(&mut self, kind: EquationKind, dd: usize, dx: usize) -> &SolutionSpace {
        let alg = self.alg;
        self.cache
            .entry((kind.name(), dd, dx))
            .or_insert_with(|| solve_space(alg, kind, dd, dx))
    }
}

pub fn is_virasoro(alg: &ConformalAlgebra) -> bool {
    alg.rank() == 1 && alg.entry(0, 0) == ConformalAlgebra::vir().entry(0, 0)
}

/// Current algebras small enough for the desk-scale structure checks, over
/// a Lie algebra with zero center that equals its derived algebra.
pub fn is_small_simple_current(alg: &ConformalAlgebra) -> bool {
    alg.current_of()
        .is_some_and(|g| g.dim() <= 3 && g.center().is_empty() && g.is_perfect())
}

/// `GCTDer = CTDer + TC` as spans, with every joint solution satisfying
/// its identity and `φ - τ ∈ TC`.
fn gctder_consistent(spaces: &mut Spaces, dd: usize, dx: usize) -> bool {
    let alg = spaces.alg;
    let g = spaces.get(EquationKind::GCTDer, dd, dx).clone();
    let mut sum = spaces.get(EquationKind::CTDer, dd, dx).basis.clone();
    sum.extend(spaces.get(EquationKind::TC, dd, dx).basis.iter().cloned());
    let pairs_ok = g.basis.iter().zip(&g.tau).all(|(phi, tau)| {
        let diff = phi.sub(tau).expect("same rank");
        lca_core::derivspaces::holds(alg, &diff, EquationKind::TC, None)
    });
    let sum_space = SolutionSpace {
        kind: EquationKind::GCTDer,
        rank: alg.rank(),
        deg_d: dd,
        deg_x: dx,
        basis: sum,
        tau: Vec::new(),
    };
    pairs_ok && space_equal(&g, &sum_space)
}

fn x_multiples(base: &ConformalMap, max: usize) -> Vec<ConformalMap> {
    (0..=max)
        .map(|m| base.scal_mul(&Poly::var(Var::X).pow(m as u32)))
        .collect()
}

fn virasoro_entries(name: &str, alg: &ConformalAlgebra, out: &mut Vec<Entry>) {
    let mut sp = Spaces::new(alg);
    for kind in [EquationKind::TC, EquationKind::TQC, EquationKind::ZTDer] {
        let dim = sp.get(kind, 3, 3).dimension();
        out.push(Entry {
            claim: format!("{kind}({name}) = 0"),
            anchor: "TQC(Vir) = TC(Vir) = ZTDer(Vir) = 0",
            status: Status::of(dim == 0),
            bounds: Some((3, 3)),
            detail: Some(format!("dimension {dim}")),
        });
    }
    for b in [2usize, 3] {
        let inner = inner_space(alg, b);
        let cder = sp.get(EquationKind::CDer, b, b).clone();
        let all_inner = cder.basis.iter().all(|phi| space_contains(&inner, phi));
        let q = inner_quotient_dimension(alg, &cder);
        out.push(Entry {
            claim: format!("every conformal derivation of {name} is inner"),
            anchor: "CDer(Vir) = CInn(Vir)",
            status: Status::of(all_inner && q == 0),
            bounds: Some((b, b)),
            detail: Some(format!(
                "dimension {}, inner quotient {q}",
                cder.dimension()
            )),
        });
        let ctder = sp.get(EquationKind::CTDer, b, b).clone();
        let truncated = inner.truncate(b, b);
        let eq = space_equal(&cder, &ctder) && space_equal(&cder, &truncated);
        out.push(Entry {
            claim: format!("CTDer({name}) = CDer({name}) = CInn({name})"),
            anchor: "CTDer(Vir) = CInn(Vir)",
            status: Status::of(eq),
            bounds: Some((b, b)),
            detail: Some(format!("dimension {}", ctder.dimension())),
        });
    }
    out.push(Entry {
        claim: format!("GCTDer({name}) = CTDer({name}) + TC({name})"),
        anchor: "φ_x - τ_x ∈ TC(R)",
        status: Status::of(gctder_consistent(&mut sp, 1, 2)),
        bounds: Some((1, 2)),
        detail: None,
    });
    let ctder = sp.get(EquationKind::CTDer, 2, 2).clone();
    out.push(fixed_point_entry(name, alg, &ctder, (2, 2)));
}

fn fixed_point_entry(
    name: &str,
    alg: &ConformalAlgebra,
    ctder: &SolutionSpace,
    bounds: (usize, usize),
) -> Entry {
    let mut detail = None;
    let ok = ctder.basis.iter().all(|phi| match delta_phi(alg, phi) {
        Ok(d) => &d == phi,
        Err(e) => {
            detail = Some(e.to_string());
            false
        }
    });
    Entry {
        claim: format!("δ_φ = φ for every triple derivation φ of {name}"),
        anchor: "φ_x = δ_{φ_x}",
        status: Status::of(ok),
        bounds: Some(bounds),
        detail,
    }
}

fn current_entries(name: &str, alg: &ConformalAlgebra, out: &mut Vec<Entry>) {
    let r = alg.rank();
    let mut sp = Spaces::new(alg);
    let dl = dl_map(alg).expect("current algebra");
    let inner = inner_space(alg, 2);

    let cder = sp.get(EquationKind::CDer, 1, 2).clone();
    let mut spanning = inner.basis.clone();
    spanning.extend(x_multiples(&dl, 2));
    let decomposes = cder.basis.iter().all(|phi| span_contains(&spanning, phi));
    out.push(Entry {
        claim: format!("every conformal derivation of {name} is q(x) d^L plus an inner derivation"),
        anchor: "φ_x(a) = f(x)(∂+x)a + [b_x a]",
        status: Status::of(decomposes),
        bounds: Some((1, 2)),
        detail: Some(format!("dimension {}", cder.dimension())),
    });
    let dl_outer = !span_contains(&inner.basis, &dl);
    out.push(Entry {
        claim: format!("d^L is not an inner derivation of {name}"),
        anchor: "d^L_x(a) = (∂+x)a",
        status: Status::of(dl_outer),
        bounds: None,
        detail: None,
    });

    let gct = sp.get(EquationKind::GCTDer, 1, 2).clone();
    let id = ConformalMap::identity(r);
    let d_id = ConformalMap::scalar(r, Poly::var(Var::D));
    let mut model = inner.basis.clone();
    model.extend(x_multiples(&id, 2));
    model.extend(x_multiples(&d_id, 1));
    let forward = gct.basis.iter().all(|phi| span_contains(&model, phi));
    let mut gct_mod_inner = gct.basis.clone();
    gct_mod_inner.extend(inner.basis.iter().cloned());
    let backward = x_multiples(&id, 2)
        .iter()
        .chain(&x_multiples(&d_id, 1))
        .all(|phi| span_contains(&gct_mod_inner, phi));
    out.push(Entry {
        claim: format!("GCTDer({name}) = span{{x^m ∂ Id, x^m Id}} modulo inner derivations"),
        anchor: "φ_x(a) = (f(x)∂ + g(x))a + d_x(a)",
        status: Status::of(forward && backward),
        bounds: Some((1, 2)),
        detail: Some(format!("dimension {}", gct.dimension())),
    });

    let tc = sp.get(EquationKind::TC, 1, 2).clone();
    let scalars = SolutionSpace {
        kind: EquationKind::TC,
        rank: r,
        deg_d: 1,
        deg_x: 2,
        basis: x_multiples(&id, 2),
        tau: Vec::new(),
    };
    out.push(Entry {
        claim: format!("TC({name}) = span{{x^m Id}}"),
        anchor: "φ_x(a) = g(x)a",
        status: Status::of(space_equal(&tc, &scalars)),
        bounds: Some((1, 2)),
        detail: Some(format!("dimension {}", tc.dimension())),
    });
    out.push(Entry {
        claim: format!("GCTDer({name}) = CTDer({name}) + TC({name})"),
        anchor: "φ_x - τ_x ∈ TC(R)",
        status: Status::of(gctder_consistent(&mut sp, 1, 2)),
        bounds: Some((1, 2)),
        detail: None,
    });
    let ctder = sp.get(EquationKind::CTDer, 1, 1).clone();
    out.push(fixed_point_entry(name, alg, &ctder, (1, 1)));
}

fn map_entry(file: &SourceFile, name: &str, src: &str, tgt: &str) -> Entry {
    let (_, _, f) = file.modmap(name).expect("declared modmap");
    let (a, b) = (
        file.conf_algebra(src).unwrap(),
        file.conf_algebra(tgt).unwrap(),
    );
    let anchor = "f = f_I + f_J, [E⁺_λ E⁻] = 0, E⁺ ∩ E⁻ = 0";
    let claim = format!("{name} is a homomorphism, an anti-homomorphism or a direct sum of both");
    let entry = |status, detail: String| Entry {
        claim: claim.clone(),
        anchor,
        status,
        bounds: None,
        detail: Some(detail),
    };
    if !is_kind(a, b, f, MapKind::TripleHom) {
        return entry(Status::Skip, "not a triple homomorphism".into());
    }
    match split_decompose(a, b, f) {
        Ok(d) => entry(Status::Pass, d.label.name().into()),
        Err(e @ Error::CenterNonzero { .. }) => entry(Status::Skip, format!("{}: {e}", e.code())),
        Err(e) => entry(Status::Fail, format!("{}: {e}", e.code())),
    }
}

/// All ledger entries for the declarations of `file`, in declaration order.
pub fn run(file: &SourceFile) -> Vec<Entry> {
    let mut out = Vec::new();
    let mut sound = BTreeMap::new();
    for (name, alg) in file.conf_algebras() {
        let skew = alg.check_skew();
        let jacobi = alg.check_jacobi();
        let ok = skew.is_ok() && jacobi.is_ok();
        sound.insert(name.to_string(), ok);
        out.push(Entry {
            claim: format!("{name} satisfies skew-symmetry and the Jacobi identity"),
            anchor: "[a_λ b] = -[b_{-λ-∂} a], [a_λ[b_μ c]] = [[a_λ b]_{λ+μ} c] + [b_μ[a_λ c]]",
            status: Status::of(ok),
            bounds: None,
            detail: skew
                .err()
                .or(jacobi.err())
                .map(|w| format!("fails on {}", w.render(alg.names()))),
        });
        if !ok {
            continue;
        }
        if is_virasoro(alg) {
            virasoro_entries(name, alg, &mut out);
        } else if is_small_simple_current(alg) {
            current_entries(name, alg, &mut out);
        }
    }
    for d in &file.declarations {
        if let lca_core::dsl::Decl::ModMap {
            name,
            source,
            target,
            ..
        } = d
        {
            if sound[source] && sound[target] {
                out.push(map_entry(file, name, source, target));
            }
        }
    }
    out
}
