//! Subcommands and their handlers.

use clap::{Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::parser::{parse_scalar, parse_skew_expr};
use super::{AnyRing, CliError, CliResult, Context, Report};
use crate::cartier::{
    delta_with, is_nilpotent, minimal_cartier_submodule, simple_factors, validate_cartier, CartierJson,
    CartierModule, PointSet,
};
use crate::error::Error;
use crate::fields::{FieldElem, FiniteField, Ring};
use crate::fmodules::{
    check_exactness, cokernel_f_dim, emerton_reduce, ideal_filtration, koszul_presentation, FModule,
};
use crate::kgroups::{
    chow_frobenius_demo, k0_class, k0_pushforward_defect, qd_rank, scramble, taelman_trace, verify_taelman_ses,
    DPresentation,
};
use crate::ore::{
    common_right_multiple_search, left_ore_witness, right_ore_witness, Localization, MultSet, SearchOutcome,
    SkewField,
};
use crate::skew::{SkewPoly, SkewRing};

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Arithmetic in R[F].
    #[command(subcommand)]
    Skew(SkewCmd),
    /// Ore witnesses, localization and the skew field D.
    #[command(subcommand)]
    Ore(OreCmd),
    /// Twisted Koszul presentations of finite F-modules.
    #[command(subcommand)]
    Koszul(KoszulCmd),
    /// Degree filtrations of right ideals.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Cartier modules on finite sets of points.
    #[command(subcommand)]
    Cartier(CartierCmd),
    /// K0-level invariants.
    #[command(subcommand)]
    K0(K0Cmd),
}

impl Group {
    pub fn name(&self) -> String {
        let (g, c) = match self {
            Group::Skew(c) => ("skew", c.name()),
            Group::Ore(c) => ("ore", c.name()),
            Group::Koszul(c) => ("koszul", c.name()),
            Group::Ideal(c) => ("ideal", c.name()),
            Group::Cartier(c) => ("cartier", c.name()),
            Group::K0(c) => ("k0", c.name()),
        };
        format!("{g} {c}")
    }
}

#[derive(Debug, Subcommand)]
pub enum SkewCmd {
    /// A·B.
    Mul { a: String, b: String },
    /// A = Q·B + R.
    Divr { a: String, b: String },
    /// A = B·Q + R (perfect fields only).
    Divl { a: String, b: String },
    /// Greatest common right divisor and least common left multiple.
    Gcrd { a: String, b: String },
}

impl SkewCmd {
    fn name(&self) -> &'static str {
        match self {
            SkewCmd::Mul { .. } => "mul",
            SkewCmd::Divr { .. } => "divr",
            SkewCmd::Divl { .. } => "divl",
            SkewCmd::Gcrd { .. } => "gcrd",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FracOp {
    Reduce,
    Add,
    Mul,
    Div,
}

#[derive(Debug, Subcommand)]
pub enum OreCmd {
    /// Ore witness for a scalar S and an element R.
    Witness {
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        s: String,
        r: String,
    },
    /// Least-degree common right multiple A·U = B·V.
    Search {
        #[arg(long, default_value_t = 8)]
        maxdeg: usize,
        a: String,
        b: String,
    },
    /// Image of NUM·DEN⁻¹ in (S⁻¹R)[F] for R = F_q[x].
    Localize {
        /// Generator f of S = {f^n}, or "nonzero".
        #[arg(long, default_value = "x")]
        set: String,
        num: String,
        den: String,
    },
    /// Arithmetic of right fractions A·B⁻¹ in D.
    Dfrac {
        #[arg(long, value_enum, default_value = "reduce")]
        op: FracOp,
        /// NUM DEN, or NUM1 DEN1 NUM2 DEN2 for binary operations.
        #[arg(num_args = 2..=4, required = true)]
        exprs: Vec<String>,
    },
}

impl OreCmd {
    fn name(&self) -> &'static str {
        match self {
            OreCmd::Witness { .. } => "witness",
            OreCmd::Search { .. } => "search",
            OreCmd::Localize { .. } => "localize",
            OreCmd::Dfrac { .. } => "dfrac",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum KoszulCmd {
    /// ψ = F·I − c for MATRIX, a JSON array whose row j is e_j·F.
    Present { matrix: String },
    /// Exactness of the presentation in every degree up to the bound.
    Check {
        matrix: String,
        /// Defaults to 2·dim + 4.
        #[arg(long)]
        bound: Option<usize>,
    },
}

impl KoszulCmd {
    fn name(&self) -> &'static str {
        match self {
            KoszulCmd::Present { .. } => "present",
            KoszulCmd::Check { .. } => "check",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum IdealCmd {
    /// Reduced generators of the right ideal generated by GENS.
    Reduce {
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// A k-basis of the elements of degree ≤ D.
    Filtration {
        #[arg(long)]
        d: usize,
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// dim of I^{≤d} / I^{≤d−1}·F for d ≤ dbound.
    Coker {
        #[arg(long, default_value_t = 8)]
        dbound: usize,
        #[arg(required = true)]
        gens: Vec<String>,
    },
}

impl IdealCmd {
    fn name(&self) -> &'static str {
        match self {
            IdealCmd::Reduce { .. } => "reduce",
            IdealCmd::Filtration { .. } => "filtration",
            IdealCmd::Coker { .. } => "coker",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CartierCmd {
    /// Nilpotence, minimal submodule and simple factors of a module.
    Analyze { module: String },
    /// The skyscraper at a rational point of the --ring Points set.
    Delta {
        #[arg(long)]
        point: usize,
        /// C acts as this scalar of F_q.
        #[arg(long)]
        scalar: Option<String>,
    },
}

impl CartierCmd {
    fn name(&self) -> &'static str {
        match self {
            CartierCmd::Analyze { .. } => "analyze",
            CartierCmd::Delta { .. } => "delta",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum K0Cmd {
    /// Class in K0 of Cartier crystals.
    Class { module: String },
    /// Trace function on rational points.
    Trace { module: String },
    /// Checks the trace sequence on the --ring Points set.
    Ses {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Rank over D of k[F]^n modulo RELATIONS, a JSON array of rows.
    Qdrank {
        #[arg(long)]
        generators: usize,
        relations: String,
        /// Also recompute after this many random elementary operations.
        #[arg(long, default_value_t = 0)]
        scramble: usize,
    },
    /// 1 − F_* on the rational Chow groups of P^n over F_q.
    Chow {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Pushforward defect of a module on one point.
    Defect { module: String },
}

impl K0Cmd {
    fn name(&self) -> &'static str {
        match self {
            K0Cmd::Class { .. } => "class",
            K0Cmd::Trace { .. } => "trace",
            K0Cmd::Ses { .. } => "ses",
            K0Cmd::Qdrank { .. } => "qdrank",
            K0Cmd::Chow { .. } => "chow",
            K0Cmd::Defect { .. } => "defect",
        }
    }
}

pub fn dispatch(g: &Group, ctx: &mut Context, out: &mut Report) -> CliResult<()> {
    match g {
        Group::Skew(c) => match ctx.ring()? {
            AnyRing::Gf(k) => skew(&SkewRing::new(k), c, out),
            AnyRing::Poly(k) => skew(&SkewRing::new(k), c, out),
            AnyRing::Rat(k) => skew(&SkewRing::new(k), c, out),
            AnyRing::Points(_) => Err(not_coefficient_ring()),
        },
        Group::Ore(c) => ore(c, ctx, out),
        Group::Koszul(c) => koszul(c, ctx, out),
        Group::Ideal(c) => ideal(c, ctx, out),
        Group::Cartier(c) => cartier(c, ctx, out),
        Group::K0(c) => k0(c, ctx, out),
    }
}

fn not_coefficient_ring() -> CliError {
    CliError::Domain(Error::InvalidParams("a Points ring has no skew polynomials".into()))
}

fn rng(ctx: &Context) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(ctx.seed)
}

fn finite_field(ctx: &Context) -> CliResult<FiniteField> {
    match ctx.ring()? {
        AnyRing::Gf(k) => Ok(k),
        _ => Err(CliError::Domain(Error::InvalidParams("this command needs a GF ring".into()))),
    }
}

fn points(ctx: &Context) -> CliResult<PointSet> {
    match ctx.ring()? {
        AnyRing::Points(p) => Ok(p),
        _ => Err(CliError::Domain(Error::InvalidParams("this command needs a Points ring".into()))),
    }
}

fn parse_all<R: Ring>(sr: &SkewRing<R>, xs: &[String]) -> CliResult<Vec<SkewPoly<R::Elem>>> {
    Ok(xs.iter().map(|x| parse_skew_expr(sr, x)).collect::<crate::Result<_>>()?)
}

fn fmt_all<R: Ring>(sr: &SkewRing<R>, xs: &[SkewPoly<R::Elem>]) -> Vec<String> {
    xs.iter().map(|x| sr.format(x)).collect()
}

fn skew<R: Ring>(sr: &SkewRing<R>, c: &SkewCmd, out: &mut Report) -> CliResult<()> {
    let (a, b) = match c {
        SkewCmd::Mul { a, b } | SkewCmd::Divr { a, b } | SkewCmd::Divl { a, b } | SkewCmd::Gcrd { a, b } => {
            (parse_skew_expr(sr, a)?, parse_skew_expr(sr, b)?)
        }
    };
    let deg_lt = |r: &SkewPoly<R::Elem>| r.degree() < b.degree();
    match c {
        SkewCmd::Mul { .. } => {
            let p = sr.skew_mul(&a, &b)?;
            let text = sr.format(&p);
            out.set("result", text.as_str())
                .check("reparse", parse_skew_expr(sr, &text)? == p);
        }
        SkewCmd::Divr { .. } => {
            let (q, r) = sr.div_right(&a, &b)?;
            out.set("quotient", sr.format(&q)).set("remainder", sr.format(&r));
            out.check("multiplyBack", sr.add(&sr.mul(&q, &b), &r) == a)
                .check("remainderDegree", deg_lt(&r));
        }
        SkewCmd::Divl { .. } => {
            let (q, r) = sr.div_left(&a, &b)?;
            out.set("quotient", sr.format(&q)).set("remainder", sr.format(&r));
            out.check("multiplyBack", sr.add(&sr.mul(&b, &q), &r) == a)
                .check("remainderDegree", deg_lt(&r));
        }
        SkewCmd::Gcrd { .. } => {
            let g = sr.gcrd_lclm(&a, &b)?;
            out.set("gcrd", sr.format(&g.gcrd))
                .set("lclm", sr.format(&g.lclm))
                .set("s", sr.format(&g.s))
                .set("t", sr.format(&g.t))
                .set("u", sr.format(&g.u))
                .set("v", sr.format(&g.v));
            let bezout = sr.add(&sr.mul(&g.s, &a), &sr.mul(&g.t, &b)) == g.gcrd;
            let common = sr.mul(&g.u, &a) == g.lclm && sr.mul(&g.v, &b) == g.lclm;
            out.check("bezout", bezout).check("commonMultiple", common);
        }
    }
    Ok(())
}

fn ore(c: &OreCmd, ctx: &mut Context, out: &mut Report) -> CliResult<()> {
    let ring = ctx.ring()?;
    if let OreCmd::Localize { set, num, den } = c {
        let AnyRing::Poly(pr) = ring else {
            return Err(CliError::Domain(Error::InvalidParams("localize needs a PolyRing".into())));
        };
        let sr = SkewRing::new(pr.clone());
        let set = if set == "nonzero" {
            MultSet::NonZero
        } else {
            MultSet::Powers(parse_scalar(&sr, set)?)
        };
        let loc = Localization::new(pr, set)?;
        let num = parse_skew_expr(&sr, num)?;
        let den = parse_scalar(&sr, den)?;
        let nf = loc.normal_form(&num, &den)?;
        let local = loc.local();
        let back = local.mul(&nf, &local.constant(local.base().from_poly(den)));
        out.set("result", local.format(&nf))
            .check("multiplyBack", back == loc.include(&num));
        return Ok(());
    }
    match ring {
        AnyRing::Gf(k) => ore_generic(&SkewRing::new(k), c, out),
        AnyRing::Poly(k) => ore_generic(&SkewRing::new(k), c, out),
        AnyRing::Rat(k) => ore_generic(&SkewRing::new(k), c, out),
        AnyRing::Points(_) => Err(not_coefficient_ring()),
    }
}

fn ore_generic<R: Ring>(sr: &SkewRing<R>, c: &OreCmd, out: &mut Report) -> CliResult<()> {
    match c {
        OreCmd::Witness { side, s, r } => {
            let s = parse_scalar(sr, s)?;
            let r = parse_skew_expr(sr, r)?;
            let (w, holds) = match side {
                SideArg::Left => {
                    let w = left_ore_witness(sr, &s, &r)?;
                    let ok = sr.mul(&w.r_tilde, &sr.constant(s.clone())) == sr.scale_left(&w.s_tilde, &r);
                    (w, ok)
                }
                SideArg::Right => {
                    let w = right_ore_witness(sr, &s, &r)?;
                    let ok = sr.scale_left(&s, &w.r_tilde) == sr.scale_right(&r, &w.s_tilde);
                    (w, ok)
                }
            };
            out.merge(&json!({"side": w.side}))
                .set("rTilde", sr.format(&w.r_tilde))
                .set("sTilde", sr.base().format(&w.s_tilde))
                .check("witnessIdentity", holds);
        }
        OreCmd::Search { maxdeg, a, b } => {
            let a = parse_skew_expr(sr, a)?;
            let b = parse_skew_expr(sr, b)?;
            out.set("maxdeg", *maxdeg);
            match common_right_multiple_search(sr, &a, &b, *maxdeg)? {
                SearchOutcome::Found { u, v, degree } => {
                    let m = sr.mul(&a, &u);
                    out.set("found", true)
                        .set("u", sr.format(&u))
                        .set("v", sr.format(&v))
                        .set("degree", degree)
                        .set("multiple", sr.format(&m))
                        .check("commonMultiple", !m.is_zero() && m == sr.mul(&b, &v));
                }
                SearchOutcome::NotFound => {
                    out.set("found", false);
                }
            }
        }
        OreCmd::Dfrac { op, exprs } => {
            let d = SkewField::new(sr.base().clone())?;
            let xs = parse_all(sr, exprs)?;
            let x = d.frac(xs[0].clone(), xs.get(1).cloned().unwrap_or_else(|| sr.one()))?;
            let binary = !matches!(op, FracOp::Reduce);
            if binary != (xs.len() == 4) || xs.len() == 3 {
                return Err(CliError::usage(
                    "InvalidInput",
                    "reduce takes NUM DEN; add, mul and div take NUM1 DEN1 NUM2 DEN2",
                ));
            }
            let z = if binary {
                let y = d.frac(xs[2].clone(), xs[3].clone())?;
                match op {
                    FracOp::Add => d.d_add(&x, &y)?,
                    FracOp::Mul => d.d_mul(&x, &y)?,
                    _ => d.d_div(&x, &y)?,
                }
            } else {
                x
            };
            let (ls, lr) = d.to_left_fraction(&z)?;
            out.set("num", sr.format(z.num()))
                .set("den", sr.format(z.den()))
                .set("leftDen", sr.format(&ls))
                .set("leftNum", sr.format(&lr))
                .set("result", d.format(&z))
                .check("leftRightAgree", sr.mul(&ls, z.num()) == sr.mul(&lr, z.den()));
        }
        OreCmd::Localize { .. } => unreachable!("handled by the caller"),
    }
    Ok(())
}

fn k_matrix(sr: &SkewRing<FiniteField>, ctx: &mut Context, text: &str) -> CliResult<Vec<Vec<FieldElem>>> {
    let rows: Vec<Vec<String>> = ctx.read_json(text)?;
    Ok(rows
        .iter()
        .map(|r| r.iter().map(|e| parse_scalar(sr, e)).collect::<crate::Result<Vec<_>>>())
        .collect::<crate::Result<_>>()?)
}

fn koszul(c: &KoszulCmd, ctx: &mut Context, out: &mut Report) -> CliResult<()> {
    let k = finite_field(ctx)?;
    let sr = SkewRing::new(k.clone());
    let (KoszulCmd::Present { matrix } | KoszulCmd::Check { matrix, .. }) = c;
    let m = FModule::from_k_matrix(k, &k_matrix(&sr, ctx, matrix)?)?;
    let pres = koszul_presentation(&m)?;
    match c {
        KoszulCmd::Present { .. } => {
            let psi: Vec<Vec<String>> = pres.psi.iter().map(|row| fmt_all(&pres.ring, row)).collect();
            out.set("psi", json!(psi))
                .set("rank", pres.rank())
                .check("composesToZero", pres.composes_to_zero());
        }
        KoszulCmd::Check { bound, .. } => {
            let bound = bound.unwrap_or(2 * pres.rank() + 4);
            let rep = check_exactness(&pres, bound)?;
            out.merge(&rep).set("bound", bound);
        }
    }
    Ok(())
}

fn ideal(c: &IdealCmd, ctx: &mut Context, out: &mut Report) -> CliResult<()> {
    let sr = SkewRing::new(finite_field(ctx)?);
    match c {
        IdealCmd::Reduce { gens } => {
            let gens = parse_all(&sr, gens)?;
            let red = emerton_reduce(&sr, &gens)?;
            let chains: Vec<Vec<Value>> = red
                .chains
                .iter()
                .map(|ch| {
                    ch.iter()
                        .map(|s| {
                            json!({
                                "degree": s.degree,
                                "alpha": sr.format(&s.alpha),
                                "alphaHat": sr.format(&s.alpha_hat),
                                "gamma": sr.format(&s.gamma),
                            })
                        })
                        .collect()
                })
                .collect();
            out.set("d0", red.d0)
                .set("reducedGens", fmt_all(&sr, &red.reduced_gens))
                .set("chains", json!(chains))
                .set("generator", sr.format(&sr.right_ideal_generator(&gens)?))
                .check("generated", red.generated)
                .check("matchesEuclid", red.matches_euclid);
        }
        IdealCmd::Filtration { d, gens } => {
            let gens = parse_all(&sr, gens)?;
            let basis = ideal_filtration(&sr, &gens, *d);
            out.set("degree", *d)
                .set("dim", basis.len())
                .set("basis", fmt_all(&sr, &basis));
        }
        IdealCmd::Coker { dbound, gens } => {
            let gens = parse_all(&sr, gens)?;
            let dims = cokernel_f_dim(&sr, &gens, *dbound)?;
            out.set("dims", dims.dims)
                .set("stable", dims.stable)
                .set("stableFrom", dims.stable_from);
        }
    }
    Ok(())
}

fn module(ctx: &mut Context, arg: &str) -> CliResult<CartierModule> {
    let j: CartierJson = ctx.read_json(arg)?;
    let m = j.to_module()?;
    let v = validate_cartier(&m);
    if let Some(bad) = v.violation {
        return Err(CliError::Domain(Error::InvalidModule(format!(
            "block {}: relation '{}' fails on basis vector {}",
            bad.block, bad.generator, bad.basis_index
        ))));
    }
    Ok(m)
}

fn factor_json(m: &CartierModule, key: &crate::cartier::FactorKey, n: i64) -> Value {
    json!({
        "point": key.point,
        "minPoly": key.format(m.p, m.base_exp),
        "degree": key.degree,
        "scalarDegree": key.scalar_degree,
        "endoFieldDegree": key.endo_field_degree,
        "multiplicity": n,
    })
}

fn trace_json(m: &CartierModule) -> CliResult<Value> {
    let tr = taelman_trace(m)?;
    let vals: Vec<Value> = tr
        .values()
        .iter()
        .map(|v| v.as_ref().map_or(Value::Null, |v| tr.field().format(v).into()))
        .collect();
    Ok(vals.into())
}

fn cartier(c: &CartierCmd, ctx: &mut Context, out: &mut Report) -> CliResult<()> {
    match c {
        CartierCmd::Analyze { module: arg } => {
            let m = module(ctx, arg)?;
            let nil = is_nilpotent(&m);
            let min = minimal_cartier_submodule(&m);
            let simples: Vec<Value> = simple_factors(&m)?
                .iter()
                .map(|f| factor_json(&m, &f.key(), f.multiplicity as i64))
                .collect();
            let bijective = min.blocks.iter().all(|b| b.dim() == 0 || b.c().det() != 0);
            out.merge(&nil)
                .set("dim", m.dim())
                .set("minimalDim", min.dim())
                .set("simples", simples)
                .check("minimalBijective", bijective)
                .check("nilpotentIffMinimalZero", nil.nilpotent == (min.dim() == 0));
        }
        CartierCmd::Delta { point, scalar } => {
            let pts = points(ctx)?;
            let fq = pts.base_field()?;
            let c = match scalar {
                Some(s) => Some(parse_scalar(&SkewRing::new(fq.clone()), s)?),
                None => None,
            };
            let m = delta_with(&pts, *point, c)?;
            out.set("module", serde_json::to_value(CartierJson::from_module(&m)?).expect("serializable"))
                .set("trace", trace_json(&m)?);
        }
    }
    Ok(())
}

fn k0(c: &K0Cmd, ctx: &mut Context, out: &mut Report) -> CliResult<()> {
    match c {
        K0Cmd::Class { module: arg } => {
            let m = module(ctx, arg)?;
            let cls = k0_class(&m)?;
            let terms: Vec<Value> = cls.terms().map(|(k, n)| factor_json(&m, k, n)).collect();
            out.set("class", terms).set("isZero", cls.is_zero());
        }
        K0Cmd::Trace { module: arg } => {
            let m = module(ctx, arg)?;
            out.set("trace", trace_json(&m)?);
        }
        K0Cmd::Ses { samples } => {
            let pts = points(ctx)?;
            let rep = verify_taelman_ses(&pts, *samples, &mut rng(ctx))?;
            let exact = rep.exact;
            out.merge(&rep).set("seed", ctx.seed).check("exact", exact);
        }
        K0Cmd::Qdrank {
            generators,
            relations,
            scramble: steps,
        } => {
            let sr = SkewRing::new(finite_field(ctx)?);
            let rows: Vec<Vec<String>> = ctx.read_json(relations)?;
            let pres = DPresentation {
                generators: *generators,
                relations: rows.iter().map(|r| parse_all(&sr, r)).collect::<CliResult<_>>()?,
            };
            let rank = qd_rank(&sr, &pres)?;
            out.set("rank", rank).set("generators", *generators);
            if *steps > 0 {
                let s = scramble(&sr, &pres, *steps, &mut rng(ctx));
                out.check("scrambleInvariant", qd_rank(&sr, &s)? == rank);
            }
        }
        K0Cmd::Chow { n, q } => {
            out.merge(&chow_frobenius_demo(*n, *q)?);
        }
        K0Cmd::Defect { module: arg } => {
            let m = module(ctx, arg)?;
            out.set("defect", k0_pushforward_defect(&m)?);
        }
    }
    Ok(())
}
