//! Validation of a template and the full skein report: the combined complex
//! `E`, its comparison with the cone of `U_b + U_c`, the homotopy identity,
//! the pentagon map, and the hat and minus exact sequences.

use std::fmt;

use crate::alexander::{alexander_oracle, skein_relation};
use crate::complex::{
    d_squared_check, project_terms, specialize, BigradedComplex, Relation, RingSpec,
};
use crate::grid::{factorial, perm_unrank, Bigrading, LinkStructure};
use crate::homology::{
    bigraded_ranks, chain_map_check, induced_rank_table, mapping_cone, tensor_shape, ChainMap,
    GradedModuleShape, RankTable, Window,
};

use super::maps::{
    add, as_chain_map, compose, localize, maps_agree, restrict, splitting_complex, Part, StateMap,
};
use super::pentagon::pentagon_map;
use super::template::{Instantiation, Side, SkeinTemplate};
use super::SkeinError;

/// Correction module for the hat sequence when the strands at the crossing
/// lie on different components of `K+`.
pub const V_MODULE: [(i64, i64, usize); 3] = [(-1, 0, 2), (0, -1, 1), (1, 0, 1)];

/// Correction module for the minus sequence in the same situation.
pub const W_MODULE: [(i64, i64, usize); 2] = [(0, 0, 1), (1, 1, 1)];

/// One checked statement. Bigrading-indexed checks produce one verdict per
/// point of the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub bigrading: Option<Bigrading>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Verdict {
    fn identity(check: &str, outcome: Result<(), String>, claim: &str) -> Verdict {
        let pass = outcome.is_ok();
        Verdict {
            check: check.into(),
            bigrading: None,
            lhs: claim.into(),
            rhs: outcome.err().unwrap_or_else(|| "holds".into()),
            pass,
        }
    }

    fn ranks(check: &str, b: Bigrading, lhs: usize, rhs: usize) -> Verdict {
        Verdict {
            check: check.into(),
            bigrading: Some(b),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }

    pub fn tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.check,
            self.bigrading.map_or("-".into(), |b| b.to_string()),
            self.lhs,
            self.rhs,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Verdicts grouped by check name, in first-seen order.
pub fn summarize(verdicts: &[Verdict]) -> Vec<(String, usize, usize)> {
    let mut out: Vec<(String, usize, usize)> = Vec::new();
    for v in verdicts {
        let slot = match out.iter().position(|(name, _, _)| *name == v.check) {
            Some(i) => i,
            None => {
                out.push((v.check.clone(), 0, 0));
                out.len() - 1
            }
        };
        if v.pass {
            out[slot].1 += 1;
        } else {
            out[slot].2 += 1;
        }
    }
    out
}

fn all_pass(verdicts: &[Verdict], prefix: &str) -> bool {
    verdicts
        .iter()
        .filter(|v| v.check.starts_with(prefix))
        .all(|v| v.pass)
}

fn witness<E: fmt::Display>(r: Result<(), E>) -> Result<(), String> {
    r.map_err(|e| format!("witness {e}"))
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub template: String,
    pub verdicts: Vec<Verdict>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// Whether every check whose name starts with `prefix` passed.
    pub fn group_passed(&self, prefix: &str) -> bool {
        all_pass(&self.verdicts, prefix)
    }

    pub fn tsv(&self) -> String {
        verdict_tsv(&self.verdicts)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "template {}", self.template)?;
        write_verdicts(f, &self.verdicts)
    }
}

fn verdict_tsv(verdicts: &[Verdict]) -> String {
    let mut s = String::from("check\tbigrading\tlhs\trhs\tverdict\n");
    for v in verdicts {
        s.push_str(&v.tsv());
        s.push('\n');
    }
    s
}

fn write_verdicts(f: &mut fmt::Formatter<'_>, verdicts: &[Verdict]) -> fmt::Result {
    for (name, pass, fail) in summarize(verdicts) {
        let verdict = if fail == 0 { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} {name} ({pass} ok, {fail} failed)")?;
    }
    for v in verdicts.iter().filter(|v| !v.pass) {
        writeln!(f, "  {}", v.tsv())?;
    }
    Ok(())
}

/// Exhaustive checks that need no homology: the scalar identities, cone
/// reassembly, the identification `I`, the pentagon chain map, grading
/// coherence and the classical skein relation.
pub fn validate_template(t: &SkeinTemplate) -> Result<ValidationReport, SkeinError> {
    let n = t.size();
    let e = t.edges();
    let mut v = Vec::new();

    let d_am = t.d_aminus();
    let d_b = t.d_b();
    let d_pb = t.d_prime_b();
    let d_ap = t.d_aplus();
    let four = [e.a, e.b, e.c, e.d];
    let scalar_x = t.scalar(&four, Part::X);

    let leak = restrict(t, &t.d_b_everywhere(), Part::X, Part::All);
    v.push(Verdict::identity(
        "lemma.db-annihilates-x",
        witness(maps_agree(n, &leak, &vec![Vec::new(); leak.len()])),
        "D_B|X = 0",
    ));
    v.push(Verdict::identity(
        "lemma.scalar-G",
        witness(maps_agree(n, &compose(&d_am, &d_b), &scalar_x)),
        "D_B o D_A- |X = U_a+U_b+U_c+U_d",
    ));
    v.push(Verdict::identity(
        "lemma.scalar-G'",
        witness(maps_agree(n, &compose(&d_pb, &d_ap), &scalar_x)),
        "D_A+ o D'_B |X' = U_a+U_b+U_c+U_d",
    ));

    let int_g = t.internal(Side::G);
    let int_gp = t.internal(Side::GPrime);
    for (label, int) in [("G", &int_g), ("G'", &int_gp)] {
        let crossing = add(&[
            &restrict(t, int, Part::X, Part::Y),
            &restrict(t, int, Part::Y, Part::X),
        ]);
        v.push(Verdict::identity(
            &format!("split.internal-{label}"),
            witness(maps_agree(n, &crossing, &vec![Vec::new(); crossing.len()])),
            "internal differential preserves the splitting",
        ));
        let sq = compose(int, int);
        v.push(Verdict::identity(
            &format!("split.d2-{label}"),
            witness(maps_agree(n, &sq, &vec![Vec::new(); sq.len()])),
            "internal d^2 = 0",
        ));
    }

    let k_minus = t.instantiation_complex(Instantiation::MinusOnG)?;
    let k_plus = t.instantiation_complex(Instantiation::PlusOnGPrime)?;
    let k_zero = t.instantiation_complex(Instantiation::ZeroOnG)?;
    let k_zero_p = t.instantiation_complex(Instantiation::ZeroOnGPrime)?;
    for (check, full, parts, claim) in [
        (
            "reassembly.K-",
            &k_minus,
            [&int_g, &d_b],
            "CFK-(K-) = int X + int Y + D_B",
        ),
        (
            "reassembly.K+",
            &k_plus,
            [&int_gp, &d_pb],
            "CFK-(K+) = int X' + int Y' + D'_B",
        ),
        (
            "reassembly.K0-G",
            &k_zero,
            [&int_g, &d_am],
            "CFK-(K0, G) = int X + int Y + D_A-",
        ),
        (
            "reassembly.K0-G'",
            &k_zero_p,
            [&int_gp, &d_ap],
            "CFK-(K0, G') = int X' + int Y' + D_A+",
        ),
    ] {
        let rows: StateMap = full.differential_rows().to_vec();
        v.push(Verdict::identity(
            check,
            witness(maps_agree(n, &rows, &add(&[parts[0], parts[1]]))),
            claim,
        ));
    }

    let (cx, xs) = splitting_complex(t, Part::X, &int_g, t.grid(Instantiation::MinusOnG), "X");
    let (cxp, xps) = splitting_complex(
        t,
        Part::X,
        &int_gp,
        t.grid(Instantiation::PlusOnGPrime),
        "X'",
    );
    let ident: StateMap = (0..factorial(n))
        .map(|i| {
            vec![crate::complex::Term::new(
                i,
                crate::complex::Monomial::one(n),
            )]
        })
        .collect();
    let i_map = as_chain_map(&cx, &cxp, localize(&ident, &xs, &xps));
    v.push(Verdict::identity(
        "identification.I",
        witness(chain_map_check(&cx, &cxp, &i_map)).and_then(|_| {
            if cx.len() == cxp.len() {
                Ok(())
            } else {
                Err(format!("|X| = {} but |X'| = {}", cx.len(), cxp.len()))
            }
        }),
        &format!(
            "I: X -> X' is a bijective chain map of degree {:?}",
            i_map.shift
        ),
    ));

    let phi = as_chain_map(&k_zero_p, &k_zero, pentagon_map(t));
    v.push(Verdict::identity(
        "pentagon.chain-map",
        witness(chain_map_check(&k_zero_p, &k_zero, &phi)),
        &format!(
            "Phi: CFK-(K0, G') -> CFK-(K0, G) is a chain map of degree {:?}",
            phi.shift
        ),
    ));

    v.extend(grading_coherence(t));

    let tr = |i| LinkStructure::trace(t.grid(i));
    let dp = alexander_oracle(&tr(Instantiation::PlusOnGPrime));
    let dm = alexander_oracle(&tr(Instantiation::MinusOnG));
    let d0 = alexander_oracle(&tr(Instantiation::ZeroOnG));
    let rel = skein_relation(&dp, &dm, &d0);
    v.push(Verdict {
        check: "alexander.skein".into(),
        bigrading: None,
        lhs: format!("D+ = {dp}; D- = {dm}; D0 = {d0}"),
        rhs: match rel {
            Some(signs) => format!("D+ - D- = (t^(1/2) - t^(-1/2)) D0 with signs {signs:?}"),
            None => "no choice of units satisfies the relation".into(),
        },
        pass: rel.is_some(),
    });

    Ok(ValidationReport {
        template: t.name().to_string(),
        verdicts: v,
    })
}

fn grading_coherence(t: &SkeinTemplate) -> Vec<Verdict> {
    let n = t.size();
    let grader = |i: Instantiation| t.grid(i).grader();
    let (gm, gp, gz, gzp) = (
        grader(Instantiation::MinusOnG),
        grader(Instantiation::PlusOnGPrime),
        grader(Instantiation::ZeroOnG),
        grader(Instantiation::ZeroOnGPrime),
    );
    let mut maslov_ok = true;
    let mut n_diff = [
        std::collections::BTreeSet::new(),
        std::collections::BTreeSet::new(),
    ];
    let mut a_diff_x = std::collections::BTreeSet::new();
    let mut a_diff_y = std::collections::BTreeSet::new();
    for idx in 0..factorial(n) {
        let s = perm_unrank(n, idx);
        let (m, p, z, zp) = (
            gm.grading(&s),
            gp.grading(&s),
            gz.grading(&s),
            gzp.grading(&s),
        );
        maslov_ok &= m.m == z.m && p.m == zp.m;
        let in_x = t.in_x(&s);
        n_diff[in_x as usize].insert(p.n_grading() - m.n_grading());
        if in_x {
            a_diff_x.insert(m.s - z.s);
        } else {
            a_diff_y.insert(p.s - zp.s);
        }
    }
    let expected_a = if t.same_component() { 0 } else { 1 };
    let single = |s: &std::collections::BTreeSet<i64>| s.len() == 1;
    vec![
        Verdict::identity(
            "grading.maslov-O-only",
            if maslov_ok {
                Ok(())
            } else {
                Err("Maslov gradings differ".into())
            },
            "M agrees between instantiations sharing their O's",
        ),
        Verdict {
            check: "grading.N-relative".into(),
            bigrading: None,
            lhs: "N(K+) - N(K-) constant on X and on Y".into(),
            rhs: format!("X: {:?}, Y: {:?}", n_diff[1], n_diff[0]),
            pass: single(&n_diff[0]) && single(&n_diff[1]),
        },
        Verdict {
            check: "grading.alexander".into(),
            bigrading: None,
            lhs: format!("A(K-) - A(K0) on X = A(K+) - A(K0') on Y' = {expected_a}"),
            rhs: format!("X: {a_diff_x:?}, Y': {a_diff_y:?}"),
            pass: a_diff_x.iter().eq([expected_a].iter())
                && a_diff_y.iter().eq([expected_a].iter()),
        },
    ]
}

/// The pieces of the combined complex.
#[derive(Debug, Clone)]
pub struct CombinedComplex {
    /// `CFK-(K+)` on `G'`, the column `X + Y'`.
    pub left: BigradedComplex,
    /// `CFK-(K-)` on `G`, the column `Y + X'`.
    pub right: BigradedComplex,
    /// `D_{A-} + D_{A+}`, preserving bigradings.
    pub f: ChainMap,
    /// `E`: the cone of `f` lowered by one in Maslov, so the `K+` column sits
    /// at its own bigrading and the `K-` column one below.
    pub e: BigradedComplex,
}

pub fn build_e(t: &SkeinTemplate) -> Result<CombinedComplex, SkeinError> {
    let left = t.instantiation_complex(Instantiation::PlusOnGPrime)?;
    let right = t.instantiation_complex(Instantiation::MinusOnG)?;
    let f = ChainMap::new((0, 0), add(&[&t.d_aminus(), &t.d_aplus()]));
    let e = mapping_cone(&left, &right, &f)?.shifted(-1, 0);
    Ok(CombinedComplex { left, right, f, e })
}

/// `f` and both complexes after a specialization of the variables.
fn specialized(
    cc: &CombinedComplex,
    relations: &[Relation],
) -> Result<(BigradedComplex, BigradedComplex, ChainMap), SkeinError> {
    let ring = RingSpec::new(cc.left.num_vars()).with_relations(relations)?;
    let proj = ring.projection();
    let k = ring.quotient_vars();
    let terms =
        cc.f.terms
            .iter()
            .map(|t| {
                let mut p = project_terms(t, &proj, k);
                crate::complex::normalize_terms(&mut p, crate::complex::Coefficients::Gf2);
                p
            })
            .collect();
    Ok((
        specialize(&cc.left, relations)?,
        specialize(&cc.right, relations)?,
        ChainMap::new(cc.f.shift, terms),
    ))
}

/// Ranks of the third term forced by exactness of
/// `H_m(K+) -> H_m(K-) -> T_{m-1} -> H_{m-1}(K+) -> H_{m-1}(K-)`.
fn les_forced(
    left: &BigradedComplex,
    right: &BigradedComplex,
    f: &ChainMap,
    window: Window,
) -> Result<RankTable, SkeinError> {
    let wide = Window::new(
        (window.m_min, window.m_max + 1),
        (window.s_min, window.s_max),
    );
    let hp = bigraded_ranks(left, wide)?;
    let hm = bigraded_ranks(right, wide)?;
    let r = induced_rank_table(left, right, f, wide)?;
    let mut out = RankTable::new(window);
    for b in window.points() {
        let up = b.shifted(1, 0);
        out.set(b, (hm.get(up) - r.get(up)) + (hp.get(b) - r.get(b)));
    }
    Ok(out)
}

fn compare_tables(
    check: &str,
    predicted: &RankTable,
    observed: &RankTable,
    window: Window,
) -> Vec<Verdict> {
    window
        .points()
        .map(|b| Verdict::ranks(check, b, predicted.get(b), observed.get(b)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct SkeinReport {
    pub template: String,
    pub same_component: bool,
    pub window: Window,
    /// `H(E)` on the window.
    pub h_e: RankTable,
    /// `H(M)` re-indexed by the bigrading of `E` it should match.
    pub h_cone: RankTable,
    /// Hat-level third term forced by exactness.
    pub hat_third: RankTable,
    /// Minus-level third term forced by exactness.
    pub minus_third: RankTable,
    pub verdicts: Vec<Verdict>,
}

impl SkeinReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn group_passed(&self, prefix: &str) -> bool {
        all_pass(&self.verdicts, prefix)
    }

    pub fn tsv(&self) -> String {
        verdict_tsv(&self.verdicts)
    }
}

impl fmt::Display for SkeinReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "template {} (window {})", self.template, self.window)?;
        writeln!(
            f,
            "crossing strands: {}",
            if self.same_component {
                "same component"
            } else {
                "different components"
            }
        )?;
        writeln!(f, "H(E):\n{}", self.h_e)?;
        writeln!(
            f,
            "H(cone(U_b+U_c)) at the matching bigradings:\n{}",
            self.h_cone
        )?;
        writeln!(f, "hat third term forced by exactness:\n{}", self.hat_third)?;
        writeln!(
            f,
            "minus third term forced by exactness:\n{}",
            self.minus_third
        )?;
        write_verdicts(f, &self.verdicts)
    }
}

/// Everything in [`validate_template`] plus the homological statements on
/// `window`.
pub fn skein_report(t: &SkeinTemplate, window: Window) -> Result<SkeinReport, SkeinError> {
    let n = t.size();
    let e = t.edges();
    let mut verdicts = validate_template(t)?.verdicts;

    let cc = build_e(t)?;
    verdicts.push(Verdict::identity(
        "E.d2",
        witness(d_squared_check(&cc.e)),
        "d^2 = 0 on E",
    ));

    // Strong form: E against the cone of U_b + U_c on CFK-(K0).
    let c0 = t.instantiation_complex(Instantiation::ZeroOnG)?;
    let mult = ChainMap::multiplication(&c0, &[e.b, e.c]);
    let m = mapping_cone(&c0, &c0, &mult)?;
    let ds = if t.same_component() { 0 } else { -1 };
    let h_e = bigraded_ranks(&cc.e, window)?;
    let h_cone = bigraded_ranks(&m, window.shifted(0, ds))?.shifted(0, -ds);
    verdicts.extend(compare_tables("strong-form", &h_e, &h_cone, window));

    // Homotopy identity on CFK-(K0, G).
    let d0: StateMap = c0.differential_rows().to_vec();
    let a0 = t.ed_a0();
    let b_ext = t.ed_b();
    let a0b = t.ed_a0b();
    let bc = t.scalar(&[e.b, e.c], Part::All);
    let lhs = add(&[&compose(&a0b, &d0), &compose(&d0, &a0b)]);
    let literal = add(&[
        &compose(&a0, &b_ext),
        &compose(&t.d_b_everywhere(), &a0),
        &bc,
    ]);
    let symmetric = add(&[&compose(&a0, &b_ext), &compose(&b_ext, &a0), &bc]);
    verdicts.push(Verdict::identity(
        "homotopy.identity",
        witness(maps_agree(n, &lhs, &literal)),
        "D eD_A0B + eD_A0B D = eD_B eD_A0 + eD_A0 D_B + U_b + U_c",
    ));
    verdicts.push(Verdict::identity(
        "homotopy.symmetric",
        witness(maps_agree(n, &lhs, &symmetric)),
        "D eD_A0B + eD_A0B D = eD_B eD_A0 + eD_A0 eD_B + U_b + U_c",
    ));

    // Phi o V, with V = D'_B I on X and I D_B on Y.
    let c0p = t.instantiation_complex(Instantiation::ZeroOnGPrime)?;
    let phi = pentagon_map(t);
    let v_map = add(&[&t.d_prime_b(), &t.d_b()]);
    let phi_v = compose(&v_map, &phi);
    verdicts.push(Verdict::identity(
        "homotopy.phi-v",
        witness(maps_agree(
            n,
            &phi_v,
            &add(&[&compose(&a0, &b_ext), &compose(&b_ext, &a0)]),
        )),
        "Phi V = eD_B eD_A0 + eD_A0 eD_B",
    ));
    let phi_v_map = ChainMap::new(mult.shift, phi_v);
    let ind_pv = induced_rank_table(&c0, &c0, &phi_v_map, window)?;
    let ind_mult = induced_rank_table(&c0, &c0, &mult, window)?;
    verdicts.extend(
        compare_tables("homotopy.induced", &ind_pv, &ind_mult, window)
            .into_iter()
            .map(|mut v| {
                v.lhs = format!("rank H(Phi V) = {}", v.lhs);
                v.rhs = format!("rank H(U_b+U_c) = {}", v.rhs);
                v
            }),
    );

    // Phi is a quasi-isomorphism.
    let h_c = bigraded_ranks(&c0, window)?;
    let h_cp = bigraded_ranks(&c0p, window)?;
    verdicts.extend(compare_tables("pentagon.homology", &h_cp, &h_c, window));

    // Hat level.
    let (hat_rel, k0_rel): (Vec<Relation>, Vec<Relation>) = if t.same_component() {
        (
            vec![Relation::Zero(e.a)],
            vec![Relation::Zero(e.a), Relation::Zero(e.b)],
        )
    } else {
        (
            vec![Relation::Zero(e.a), Relation::Zero(e.b)],
            vec![Relation::Zero(e.a)],
        )
    };
    let (lh, rh, fh) = specialized(&cc, &hat_rel)?;
    let hat_third = les_forced(&lh, &rh, &fh, window)?;
    let hat_k0 = specialize(&c0, &k0_rel)?;
    let predicted = if t.same_component() {
        bigraded_ranks(&hat_k0, window)?
    } else {
        let table = bigraded_ranks(&hat_k0, window.grown(2))?;
        tensor_shape(&table, &GradedModuleShape::new(V_MODULE.to_vec()), window)?
    };
    verdicts.extend(compare_tables("hat-les", &predicted, &hat_third, window));

    // Minus level.
    let minus_third = les_forced(&cc.left, &cc.right, &cc.f, window)?;
    let predicted = if t.same_component() {
        bigraded_ranks(&specialize(&c0, &[Relation::Identify(e.a, e.b)])?, window)?
    } else {
        let table = bigraded_ranks(&c0, window.grown(2))?;
        tensor_shape(&table, &GradedModuleShape::new(W_MODULE.to_vec()), window)?
    };
    verdicts.extend(compare_tables(
        "minus-les",
        &predicted,
        &minus_third,
        window,
    ));

    Ok(SkeinReport {
        template: t.name().to_string(),
        same_component: t.same_component(),
        window,
        h_e,
        h_cone,
        hat_third,
        minus_third,
        verdicts,
    })
}
