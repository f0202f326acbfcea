use super::checks::*;
use super::matrices::{
    generic_matrix, generic_names, skew_matrix, skew_names, symmetric_matrix, symmetric_names,
    vars_without,
};
use super::{
    ExpectedProfile, FamilyId, FamilyInstance, FamilyParams, FamilySpec, Proportionality,
    VariableBlock,
};
use crate::error::{Error, Result};
use crate::hessian::{hess_is_zero, is_cone, GradientRelation, SampleConfig};
use crate::linalg::{binary_resultant, determinant, pfaffian};
use crate::ring::{parse, Field, Poly, VarSet};

fn names(prefix: &str, range: std::ops::Range<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn var(vars: &VarSet, name: &str) -> Poly {
    Poly::var(vars, Field::Rational, name).expect("generated name belongs to the ring")
}

fn sum(vars: &VarSet, terms: impl IntoIterator<Item = Poly>) -> Poly {
    terms
        .into_iter()
        .fold(Poly::zero(vars, Field::Rational), |acc, t| &acc + &t)
}

/// Splits a name into its alphabetic stem and numeric suffix.
fn name_key(name: &str) -> (String, Option<u64>, String) {
    let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
    let suffix = name[stem.len()..].parse().ok();
    (stem.to_string(), suffix, name.to_string())
}

/// Parses an inner polynomial, ordering its variables by name with numeric
/// suffixes compared as numbers, so `z0*z2 - z1^2` has variables
/// `z0, z1, z2`.
pub fn parse_inner(text: &str) -> Result<Poly> {
    let raw = parse(text, None)?;
    let mut sorted = raw.vars().names().to_vec();
    sorted.sort_by_key(|n| name_key(n));
    raw.embed(&VarSet::new(sorted)?)
}

fn instance(
    id: FamilyId,
    params: FamilyParams,
    description: String,
    polynomial: Poly,
    degree: u32,
) -> Result<FamilyInstance> {
    if polynomial.is_homogeneous() != Some(degree) {
        return Err(Error::Invalid(format!(
            "family `{id}` produced a polynomial that is not homogeneous of degree {degree}"
        )));
    }
    Ok(FamilyInstance {
        spec: FamilySpec { id, params },
        description,
        polynomial,
        degree,
        blocks: Vec::new(),
        expected: ExpectedProfile::default(),
        reference: ExpectedProfile::default(),
        proportionality: None,
        gradient_relations: Vec::new(),
        checks: Vec::new(),
    })
}

fn with_checks(mut inst: FamilyInstance, ids: &[&str]) -> FamilyInstance {
    inst.checks = ids.iter().map(|s| s.to_string()).collect();
    inst
}

/// Validates an inner form: homogeneous of degree at least 2, at least two
/// variables, not a cone.
fn check_inner(g: &Poly, id: FamilyId) -> Result<u32> {
    let d = g.is_homogeneous().ok_or(Error::NotHomogeneous)?;
    if d < 2 {
        return Err(Error::Invalid(format!(
            "family `{id}` needs an inner form of degree >= 2, got {d}"
        )));
    }
    if g.vars().len() < 2 {
        return Err(Error::Invalid(format!(
            "family `{id}` needs an inner form in at least 2 variables"
        )));
    }
    let cone = is_cone(g)?;
    if cone.is_cone {
        let witness = cone.vertex_directions[0].join(", ");
        return Err(Error::Cone(format!("({witness})")));
    }
    Ok(d)
}

fn perazzo_core(vars: &VarSet) -> Poly {
    let x = |i: usize| var(vars, &format!("x{i}"));
    sum(
        vars,
        [
            &x(0) * &x(3).pow(2),
            &(&x(1) * &x(3)) * &x(4),
            &x(2) * &x(4).pow(2),
        ],
    )
}

/// `x0*x3^2 + x1*x3*x4 + x2*x4^2` in `P^4`.
pub fn perazzo() -> FamilyInstance {
    let vars = VarSet::new(names("x", 0..5)).expect("valid names");
    let f = perazzo_core(&vars);
    let mut inst = instance(
        FamilyId::Perazzo,
        FamilyParams::default(),
        "Perazzo cubic in P^4".into(),
        f,
        3,
    )
    .expect("cubic by construction");
    inst.blocks = vec![
        VariableBlock::new("linear", names("x", 0..3)),
        VariableBlock::new("quadratic", names("x", 3..5)),
    ];
    inst.expected = ExpectedProfile::hess(true).not_cone();
    with_checks(inst, &[HESS_ZERO, NOT_CONE])
}

/// The Perazzo cubic plus `sum_{i=5}^N xi^3` in `P^N`.
pub fn perazzo_ext(big_n: usize) -> Result<FamilyInstance> {
    if big_n < 5 {
        return Err(Error::Invalid(format!("perazzo-ext needs N >= 5, got {big_n}")));
    }
    let vars = VarSet::new(names("x", 0..big_n + 1))?;
    let cubes = (5..=big_n).map(|i| var(&vars, &format!("x{i}")).pow(3));
    let f = &perazzo_core(&vars) + &sum(&vars, cubes);
    let params = FamilyParams {
        big_n: Some(big_n),
        ..Default::default()
    };
    let mut inst = instance(
        FamilyId::PerazzoExt,
        params,
        format!("Perazzo cubic extended by Fermat cubes in P^{big_n}"),
        f,
        3,
    )?;
    inst.blocks = vec![
        VariableBlock::new("linear", names("x", 0..3)),
        VariableBlock::new("quadratic", names("x", 3..5)),
        VariableBlock::new("fermat", names("x", 5..big_n + 1)),
    ];
    inst.expected = ExpectedProfile::hess(true).not_cone();
    Ok(with_checks(inst, &[HESS_ZERO, NOT_CONE]))
}

/// Variables `u, v, x1..xn, y1..yn` of a pencil over `n` inner variables.
pub fn pencil_vars(n: usize) -> VarSet {
    let mut all = vec!["u".to_string(), "v".to_string()];
    all.extend(names("x", 1..n + 1));
    all.extend(names("y", 1..n + 1));
    VarSet::new(all).expect("valid names")
}

/// The relations `f_xi f_yj = f_xj f_yi` for `i < j`.
pub fn pencil_relations(n: usize) -> Vec<GradientRelation> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(GradientRelation::new(
                &format!("x{i}"),
                &format!("y{j}"),
                &format!("x{j}"),
                &format!("y{i}"),
            ));
        }
    }
    out
}

fn pencil_poly(g: &Poly) -> Result<Poly> {
    let n = g.vars().len();
    let vars = pencil_vars(n);
    let (u, v) = (var(&vars, "u"), var(&vars, "v"));
    let images: Vec<Poly> = (1..=n)
        .map(|i| &(&u * &var(&vars, &format!("x{i}"))) - &(&v * &var(&vars, &format!("y{i}"))))
        .collect();
    g.compose(&images)
}

fn pencil_as(id: FamilyId, g: &Poly, params: FamilyParams) -> Result<FamilyInstance> {
    let d = check_inner(g, id)?;
    let n = g.vars().len();
    let f = pencil_poly(g)?;
    let mut inst = instance(
        id,
        params,
        format!("g(u*x_i - v*y_i) for g = {g} in {n} variables"),
        f,
        2 * d,
    )?;
    inst.blocks = vec![
        VariableBlock::new("pencil", ["u".to_string(), "v".to_string()]),
        VariableBlock::new("x", names("x", 1..n + 1)),
        VariableBlock::new("y", names("y", 1..n + 1)),
    ];
    let mut expected = ExpectedProfile::hess(true);
    // a nonvanishing hessian of g means rk H(g) = n
    if !hess_is_zero(g, &SampleConfig::default())?.is_zero {
        expected.generic_rank = Some(n + 3);
        expected.dim_polar_image = Some(n as i64 + 2);
    }
    inst.expected = expected;
    inst.gradient_relations = pencil_relations(n);
    Ok(with_checks(inst, &[HESS_ZERO, GRADIENT_RELATIONS, EULER]))
}

/// `f(u, v, x, y) = g(u*x1 - v*y1, ..., u*xn - v*yn)`.
///
/// Rejects inner forms that are cones, of degree below 2 or in fewer than
/// two variables; reducedness and irreducibility of `g` are assumed.
pub fn pencil(g: &Poly) -> Result<FamilyInstance> {
    let params = FamilyParams {
        g: Some(g.to_string()),
        ..Default::default()
    };
    pencil_as(FamilyId::Pencil, g, params)
}

/// The pencil over the Fermat conic, a quadric in `P^7`.
pub fn p7_fermat() -> FamilyInstance {
    let g = parse_inner("z1^2 + z2^2 + z3^2").expect("valid text");
    let mut inst =
        pencil_as(FamilyId::P7Fermat, &g, FamilyParams::default()).expect("valid pencil");
    inst.description = "(u*x1 - v*y1)^2 + (u*x2 - v*y2)^2 + (u*x3 - v*y3)^2 in P^7".into();
    inst.expected = ExpectedProfile::hess(true).ranks(6, 5);
    inst
}

/// `(u*x1 - v*y1)^2 + (u*x2 - v*y2)^2 + u^4` in `P^5`.
pub fn p5_example() -> FamilyInstance {
    let vars = VarSet::new(["u", "v", "x1", "x2", "y1", "y2"]).expect("valid names");
    let (u, v) = (var(&vars, "u"), var(&vars, "v"));
    let lin = |i: usize| &(&u * &var(&vars, &format!("x{i}"))) - &(&v * &var(&vars, &format!("y{i}")));
    let f = sum(&vars, [lin(1).pow(2), lin(2).pow(2), u.pow(4)]);
    let mut inst = instance(
        FamilyId::P5Example,
        FamilyParams::default(),
        "(u*x1 - v*y1)^2 + (u*x2 - v*y2)^2 + u^4 in P^5".into(),
        f,
        4,
    )
    .expect("quartic by construction");
    inst.blocks = vec![
        VariableBlock::new("pencil", ["u".to_string(), "v".to_string()]),
        VariableBlock::new("x", names("x", 1..3)),
        VariableBlock::new("y", names("y", 1..3)),
    ];
    inst.expected = ExpectedProfile::hess(true).not_cone();
    inst.reference.generic_rank = Some(5);
    inst.reference.dim_polar_image = Some(4);
    inst.gradient_relations = vec![GradientRelation::new("x1", "y2", "x2", "y1")];
    with_checks(inst, &[HESS_ZERO, NOT_CONE, GRADIENT_RELATIONS])
}

/// Variables of a dual Cayley instance: row by row, `a{i}_{j}` for
/// `j = 0..=N-r` followed by `b{i}_{k}` for `k = 1..=r`, rows `i = 0..=r`.
pub fn dual_cayley_vars(r: usize, big_n: usize) -> VarSet {
    let mut all = Vec::new();
    for i in 0..=r {
        all.extend((0..=big_n - r).map(|j| format!("a{i}_{j}")));
        all.extend((1..=r).map(|k| format!("b{i}_{k}")));
    }
    VarSet::new(all).expect("valid names")
}

/// Relations `f_{a(i,l)} f_{a(k,m)} = f_{a(i,m)} f_{a(k,l)}` for `i < k`,
/// `l < m`.
pub fn dual_cayley_relations(r: usize, big_n: usize) -> Vec<GradientRelation> {
    let cols = big_n - r + 1;
    let mut out = Vec::new();
    for i in 0..=r {
        for k in i + 1..=r {
            for l in 0..cols {
                for m in l + 1..cols {
                    out.push(GradientRelation::new(
                        &format!("a{i}_{l}"),
                        &format!("a{k}_{m}"),
                        &format!("a{i}_{m}"),
                        &format!("a{k}_{l}"),
                    ));
                }
            }
        }
    }
    out
}

/// Renaming that carries a dual Cayley instance with `r = 1` onto the
/// pencil variables: `a0_j -> x{j+1}`, `a1_j -> y{j+1}`, `b1_1 -> u`,
/// `b0_1 -> v`.
pub fn dual_cayley_to_pencil_name(name: &str) -> String {
    match name {
        "b1_1" => "u".into(),
        "b0_1" => "v".into(),
        _ => {
            let rename = |prefix: &str, to: &str| {
                name.strip_prefix(prefix)
                    .and_then(|j| j.parse::<usize>().ok())
                    .map(|j| format!("{to}{}", j + 1))
            };
            rename("a0_", "x")
                .or_else(|| rename("a1_", "y"))
                .unwrap_or_else(|| name.to_string())
        }
    }
}

/// The maximal minors `B'_j = sum_i (-1)^i a{i}_{j} C_i`, where `C_i` is the
/// determinant of the `b` block with row `i` removed.
pub fn dual_cayley_minors(r: usize, big_n: usize) -> Result<Vec<Poly>> {
    let vars = dual_cayley_vars(r, big_n);
    let b = crate::linalg::PolyMatrix::from_fn(r + 1, r, |i, k| var(&vars, &format!("b{i}_{}", k + 1)))?;
    let cofactors = (0..=r)
        .map(|i| {
            let rows: Vec<usize> = (0..=r).filter(|&x| x != i).collect();
            let cols: Vec<usize> = (0..r).collect();
            determinant(&b.submatrix(&rows, &cols)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=big_n - r)
        .map(|j| {
            let terms = (0..=r).map(|i| {
                let t = &var(&vars, &format!("a{i}_{j}")) * &cofactors[i];
                if i % 2 == 0 {
                    t
                } else {
                    -t
                }
            });
            sum(&vars, terms)
        })
        .collect())
}

/// `g(B'_0, ..., B'_{N-r})` over the entries of an `(r+1) x (N+1)` matrix
/// `[A' | B']`.
pub fn dual_cayley(g: &Poly, r: usize, big_n: usize) -> Result<FamilyInstance> {
    let id = FamilyId::DualCayley;
    if r < 1 {
        return Err(Error::Invalid("dual-cayley needs r >= 1".into()));
    }
    if big_n < r + 1 || g.vars().len() != big_n - r + 1 {
        return Err(Error::Invalid(format!(
            "dual-cayley with r = {r}, N = {big_n} needs g in N - r + 1 variables, got {}",
            g.vars().len()
        )));
    }
    let d = check_inner(g, id)?;
    let f = g.compose(&dual_cayley_minors(r, big_n)?)?;
    let params = FamilyParams {
        r: Some(r),
        big_n: Some(big_n),
        g: Some(g.to_string()),
        ..Default::default()
    };
    let mut inst = instance(
        id,
        params,
        format!("g(B'_0, ..., B'_{}) for g = {g}, r = {r}", big_n - r),
        f,
        d * (r as u32 + 1),
    )?;
    inst.blocks = (0..=r)
        .map(|i| VariableBlock::new(&format!("a{i}"), (0..=big_n - r).map(|j| format!("a{i}_{j}"))))
        .chain((0..=r).map(|i| VariableBlock::new(&format!("b{i}"), (1..=r).map(|k| format!("b{i}_{k}")))))
        .collect();
    inst.expected = ExpectedProfile::hess(true);
    inst.gradient_relations = dual_cayley_relations(r, big_n);
    let mut ids = vec![HESS_ZERO, GRADIENT_RELATIONS];
    if r == 1 {
        ids.push(PENCIL_REDUCTION);
    }
    Ok(with_checks(inst, &ids))
}

/// Binary forms `sum wi s^(a-i) t^i` and `sum zj s^(b-j) t^j` over the ring
/// `s, t, w0..wa, z0..zb`.
pub fn scroll_forms(a: usize, b: usize) -> Result<(Poly, Poly)> {
    let mut all = vec!["s".to_string(), "t".to_string()];
    all.extend(names("w", 0..a + 1));
    all.extend(names("z", 0..b + 1));
    let vars = VarSet::new(all)?;
    let (s, t) = (var(&vars, "s"), var(&vars, "t"));
    let form = |prefix: &str, deg: usize| {
        sum(
            &vars,
            (0..=deg).map(|i| {
                &(&var(&vars, &format!("{prefix}{i}")) * &s.pow((deg - i) as u32))
                    * &t.pow(i as u32)
            }),
        )
    };
    Ok((form("w", a), form("z", b)))
}

/// The resultant of the two generic binary forms of degrees `a` and `b`,
/// a form of degree `a + b` in `w0..wa, z0..zb`.
pub fn scroll_dual(a: usize, b: usize) -> Result<FamilyInstance> {
    if a < 1 || b < a {
        return Err(Error::Invalid(format!(
            "scroll-dual needs 1 <= a <= b, got a = {a}, b = {b}"
        )));
    }
    let (fa, gb) = scroll_forms(a, b)?;
    let res = binary_resultant(&fa, &gb, "s", "t")?;
    let params = FamilyParams {
        a: Some(a),
        b: Some(b),
        ..Default::default()
    };
    let mut inst = instance(
        FamilyId::ScrollDual,
        params,
        format!("Res(sum wi s^({a}-i) t^i, sum zj s^({b}-j) t^j)"),
        res,
        (a + b) as u32,
    )?;
    inst.blocks = vec![
        VariableBlock::new("w", names("w", 0..a + 1)),
        VariableBlock::new("z", names("z", 0..b + 1)),
    ];
    let mut ids = Vec::new();
    if a == 1 && b >= 2 {
        inst.expected = ExpectedProfile::hess(true).not_cone();
        ids.extend([HESS_ZERO, NOT_CONE, CLOSED_FORM]);
    } else if a == 1 {
        ids.push(CLOSED_FORM);
    }
    Ok(with_checks(inst, &ids))
}

/// `sum_{i=0}^b (-w1)^(b-i) w0^i zi` over `w0, w1, z0..zb`.
pub fn scroll_dual_closed(b: usize) -> Result<FamilyInstance> {
    if b < 1 {
        return Err(Error::Invalid("scroll-dual-closed needs b >= 1".into()));
    }
    let mut all = names("w", 0..2);
    all.extend(names("z", 0..b + 1));
    let vars = VarSet::new(all)?;
    let (w0, w1) = (var(&vars, "w0"), var(&vars, "w1"));
    let minus_w1 = -w1;
    let f = sum(
        &vars,
        (0..=b).map(|i| {
            &(&minus_w1.pow((b - i) as u32) * &w0.pow(i as u32)) * &var(&vars, &format!("z{i}"))
        }),
    );
    let params = FamilyParams {
        b: Some(b),
        ..Default::default()
    };
    let mut inst = instance(
        FamilyId::ScrollDualClosed,
        params,
        format!("sum_{{i=0}}^{b} (-w1)^({b}-i) w0^i zi"),
        f,
        (b + 1) as u32,
    )?;
    inst.blocks = vec![
        VariableBlock::new("w", names("w", 0..2)),
        VariableBlock::new("z", names("z", 0..b + 1)),
    ];
    if b >= 2 {
        inst.expected = ExpectedProfile::hess(true).not_cone();
        Ok(with_checks(inst, &[HESS_ZERO, NOT_CONE]))
    } else {
        Ok(inst)
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `alpha = (-1)^(n(n-1)/2) n`.
pub fn segre_alpha(n: usize) -> i64 {
    sign(n * (n - 1) / 2) * n as i64
}

/// `beta = (-1)^(n(n-1)/2) 2^((n+1)n/2) n`.
pub fn segre_beta(n: usize) -> i64 {
    sign(n * (n - 1) / 2) * (1i64 << ((n + 1) * n / 2)) * n as i64
}

/// `gamma = (-1)^m m`.
pub fn segre_gamma(m: usize) -> i64 {
    sign(m) * m as i64
}

fn size_param(n: Option<usize>, m: Option<usize>) -> FamilyParams {
    FamilyParams {
        n,
        m,
        ..Default::default()
    }
}

/// Determinant of the generic `(n+1) x (n+1)` matrix `x{i}_{j}`.
pub fn generic_det(n: usize) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(Error::Invalid(format!("generic-det needs n >= 2, got {n}")));
    }
    let size = n + 1;
    let vars = vars_without(generic_names(size), None);
    let f = determinant(&generic_matrix(size, &vars))?;
    let mut inst = instance(
        FamilyId::GenericDet,
        size_param(Some(n), None),
        format!("determinant of the generic {size}x{size} matrix"),
        f,
        size as u32,
    )?;
    inst.blocks = vec![VariableBlock::new("entries", generic_names(size))];
    inst.expected = ExpectedProfile::hess(false).ranks(size * size, 2 * n + 2);
    let exponent = (size * (n - 1)) as u32;
    inst.proportionality = Some(Proportionality {
        exponent,
        constant: Some(segre_alpha(n)),
        observed_constant: None,
        formula: "hess = (-1)^(n(n-1)/2) n det^((n+1)(n-1))".into(),
    });
    Ok(with_checks(inst, &[HESS_NONZERO, SEGRE_CONSTANT, HESS_DIVISIBILITY]))
}

/// Determinant of the generic symmetric `(n+1) x (n+1)` matrix `s{i}_{j}`,
/// `i <= j`.
pub fn symmetric_det(n: usize) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(Error::Invalid(format!("symmetric-det needs n >= 2, got {n}")));
    }
    let size = n + 1;
    let vars = vars_without(symmetric_names(size), None);
    let f = determinant(&symmetric_matrix(size, &vars))?;
    let mut inst = instance(
        FamilyId::SymmetricDet,
        size_param(Some(n), None),
        format!("determinant of the generic symmetric {size}x{size} matrix"),
        f,
        size as u32,
    )?;
    inst.blocks = vec![VariableBlock::new("entries", symmetric_names(size))];
    inst.expected = ExpectedProfile::hess(false);
    inst.proportionality = Some(Proportionality {
        exponent: ((n + 2) * (n - 1) / 2) as u32,
        constant: Some(segre_beta(n)),
        observed_constant: None,
        formula: "hess = (-1)^(n(n-1)/2) 2^((n+1)n/2) n det^((n+2)(n-1)/2)".into(),
    });
    Ok(with_checks(inst, &[HESS_NONZERO, SEGRE_CONSTANT]))
}

/// Pfaffian of the generic skew `(2m+2) x (2m+2)` matrix `a{i}_{j}`,
/// `i < j`.
pub fn pfaffian_form(m: usize) -> Result<FamilyInstance> {
    if m < 2 {
        return Err(Error::Invalid(format!("pfaffian-form needs m >= 2, got {m}")));
    }
    let size = 2 * m + 2;
    let vars = vars_without(skew_names(size), None);
    let f = pfaffian(&skew_matrix(size, &vars))?;
    let mut inst = instance(
        FamilyId::PfaffianForm,
        size_param(None, Some(m)),
        format!("Pfaffian of the generic skew {size}x{size} matrix"),
        f,
        (m + 1) as u32,
    )?;
    inst.blocks = vec![VariableBlock::new("entries", skew_names(size))];
    inst.expected = ExpectedProfile::hess(false);
    inst.proportionality = Some(Proportionality {
        exponent: ((2 * m + 1) * (m - 1)) as u32,
        constant: Some(segre_gamma(m)),
        observed_constant: None,
        formula: "hess = (-1)^m m Pf^((2m+1)(m-1))".into(),
    });
    Ok(with_checks(inst, &[HESS_NONZERO, SEGRE_CONSTANT, PF_SQUARE]))
}

/// The generic determinant with `x{n}_{n} = 0`.
pub fn det_slice(n: usize) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(Error::Invalid(format!("det-slice needs n >= 2, got {n}")));
    }
    let size = n + 1;
    let dropped = format!("x{n}_{n}");
    let vars = vars_without(generic_names(size), Some(&dropped));
    let f = determinant(&generic_matrix(size, &vars))?;
    let mut inst = instance(
        FamilyId::DetSlice,
        size_param(Some(n), None),
        format!("generic {size}x{size} determinant with {dropped} = 0"),
        f,
        size as u32,
    )?;
    inst.blocks = vec![VariableBlock::new("entries", vars.names().to_vec())];
    inst.expected = ExpectedProfile::hess(true).codim((n * n) as i64 - 2);
    if n == 2 {
        inst.reference = ExpectedProfile::default().ranks(7, 6);
    }
    Ok(with_checks(inst, &[HESS_ZERO]))
}

/// The symmetric determinant with `s{n}_{n} = 0`.
pub fn sym_slice(n: usize) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(Error::Invalid(format!("sym-slice needs n >= 2, got {n}")));
    }
    let size = n + 1;
    let dropped = format!("s{n}_{n}");
    let vars = vars_without(symmetric_names(size), Some(&dropped));
    let f = determinant(&symmetric_matrix(size, &vars))?;
    let mut inst = instance(
        FamilyId::SymSlice,
        size_param(Some(n), None),
        format!("symmetric {size}x{size} determinant with {dropped} = 0"),
        f,
        size as u32,
    )?;
    inst.blocks = vec![VariableBlock::new("entries", vars.names().to_vec())];
    inst.expected = ExpectedProfile::hess(true).codim(((n * n + n) as i64 - 4) / 2);
    if n == 2 {
        inst.reference = ExpectedProfile::default().ranks(4, 4);
    }
    Ok(with_checks(inst, &[HESS_ZERO]))
}

/// The Pfaffian with `a{2m}_{2m+1} = 0`.
pub fn pf_slice(m: usize) -> Result<FamilyInstance> {
    if m < 2 {
        return Err(Error::Invalid(format!("pf-slice needs m >= 2, got {m}")));
    }
    let size = 2 * m + 2;
    let dropped = format!("a{}_{}", 2 * m, 2 * m + 1);
    let vars = vars_without(skew_names(size), Some(&dropped));
    let f = pfaffian(&skew_matrix(size, &vars))?;
    let mut inst = instance(
        FamilyId::PfSlice,
        size_param(None, Some(m)),
        format!("Pfaffian of the skew {size}x{size} matrix with {dropped} = 0"),
        f,
        (m + 1) as u32,
    )?;
    inst.blocks = vec![VariableBlock::new("entries", vars.names().to_vec())];
    inst.expected = ExpectedProfile::hess(true).codim((2 * m * m) as i64 - m as i64 - 2);
    if m == 2 {
        inst.reference = ExpectedProfile::default().ranks(13, 10);
    }
    Ok(with_checks(inst, &[HESS_ZERO]))
}

/// Variables `a0..a_{n+1}, b0..b_{n+1}`.
pub fn cauchy_schwartz_vars(n: usize) -> VarSet {
    let mut all = names("a", 0..n + 2);
    all.extend(names("b", 0..n + 2));
    VarSet::new(all).expect("valid names")
}

/// `sum_{i<j} (ai bj - aj bi)^2`, the right side of Lagrange's identity.
pub fn plucker_square_sum(n: usize) -> Poly {
    let vars = cauchy_schwartz_vars(n);
    let len = n + 2;
    let mut terms = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let a = |k: usize| var(&vars, &format!("a{k}"));
            let b = |k: usize| var(&vars, &format!("b{k}"));
            terms.push((&(&a(i) * &b(j)) - &(&a(j) * &b(i))).pow(2));
        }
    }
    sum(&vars, terms)
}

/// `|a|^2 |b|^2 - (a.b)^2` for vectors of length `n + 2`.
pub fn cauchy_schwartz(n: usize) -> Result<FamilyInstance> {
    if n < 1 {
        return Err(Error::Invalid("cauchy-schwartz needs n >= 1".into()));
    }
    let vars = cauchy_schwartz_vars(n);
    let len = n + 2;
    let a = |k: usize| var(&vars, &format!("a{k}"));
    let b = |k: usize| var(&vars, &format!("b{k}"));
    let aa = sum(&vars, (0..len).map(|k| a(k).pow(2)));
    let bb = sum(&vars, (0..len).map(|k| b(k).pow(2)));
    let ab = sum(&vars, (0..len).map(|k| &a(k) * &b(k)));
    let f = &(&aa * &bb) - &ab.pow(2);
    let mut inst = instance(
        FamilyId::CauchySchwartz,
        size_param(Some(n), None),
        format!("|a|^2 |b|^2 - (a.b)^2 for vectors of length {len}"),
        f,
        4,
    )?;
    inst.blocks = vec![
        VariableBlock::new("a", names("a", 0..len)),
        VariableBlock::new("b", names("b", 0..len)),
    ];
    inst.expected = ExpectedProfile::hess(false);
    let mut ids = vec![HESS_NONZERO, LAGRANGE];
    if n == 1 {
        inst.proportionality = Some(Proportionality {
            exponent: 3,
            constant: None,
            observed_constant: Some(192),
            formula: "hess = c f^3".into(),
        });
        ids.push(HESS_PROPORTIONAL);
    }
    Ok(with_checks(inst, &ids))
}
