use mvforge_core::eigenhopf::{
    build_figure1, kernel_witness, no_nonzero_rational_on_segment, strip_witness, verify_eigen,
};
use mvforge_core::exactnum::rat;
use mvforge_core::finitemv::{Chang, ChangElement};
use mvforge_core::gammagerms::{
    chang_iso_check, chang_to_germ, germ_at_zero_1d, quadrant_sigma, HomogPL, LexElement, Sector,
};
use mvforge_core::mcnaughton::{from_term, parse_term, shift_kernel_demo};
use mvforge_core::MvAlgebra;
use serde_json::json;

use crate::error::CliError;

fn verdict(ok: bool, what: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Math(format!("{what}: certificate failed")))
    }
}

fn lin(ax: i64, ay: i64) -> HomogPL {
    HomogPL::linear(Sector::Quadrant, ax, ay)
}

fn lex(m: i64, h: HomogPL) -> LexElement {
    LexElement::new(m, h).expect("quadrant fan")
}

/// Elements `m + (ℓ1 ∨ ℓ2)` over small integer forms.
fn sample_lex() -> Vec<LexElement> {
    let forms: Vec<(i64, i64)> = vec![(1, 0), (0, 1), (1, -1), (-1, 2), (2, -1), (0, 0)];
    let mut out = Vec::new();
    for (i, &(a, b)) in forms.iter().enumerate() {
        for &(c, d) in &forms[i..] {
            for m in [0, 1] {
                out.push(lex(m, lin(a, b).join(&lin(c, d)).expect("quadrant fans")));
            }
        }
    }
    out
}

pub fn nonhopf_quadrant() -> Result<(), CliError> {
    let x = lex(0, lin(1, 0));
    let y = lex(0, lin(0, 1));
    let yx = lex(0, lin(-1, 1).join(&lin(0, 0))?);
    let xy = lex(0, lin(1, -1).join(&lin(0, 0))?);
    let s_x = quadrant_sigma(&x);
    let s_yx = quadrant_sigma(&yx);
    let s_xy = quadrant_sigma(&xy);
    let ok_x = s_x == x;
    let ok_yx = s_yx == y;
    let ok_xy = s_xy == LexElement::zero();
    println!("q(x, y) = (x, x + y)");
    println!("σ(x) = {}  [{}]", s_x.h, if ok_x { "= x" } else { "FAILED" });
    println!("σ((y-x) v 0) = {}  [{}]", s_yx.h, if ok_yx { "= y" } else { "FAILED" });
    println!("σ((x-y) v 0) = {}  [{}]", s_xy.h, if ok_xy { "= 0" } else { "FAILED" });
    let sample = sample_lex();
    let mut hom = quadrant_sigma(&LexElement::unit()) == LexElement::unit();
    for a in &sample {
        hom &= quadrant_sigma(&a.neg()) == quadrant_sigma(a).neg();
        for b in &sample {
            let (sa, sb) = (quadrant_sigma(a), quadrant_sigma(b));
            hom &= quadrant_sigma(&a.add(b)) == sa.add(&sb);
            hom &= quadrant_sigma(&a.join(b)) == sa.join(&sb);
            hom &= quadrant_sigma(&a.meet(b)) == sa.meet(&sb);
        }
    }
    println!("homomorphism on {} sample elements: {hom}", sample.len());
    // x and y lie in the image and generate; (x-y) v 0 is a nonzero kernel element
    let surjective = ok_x && ok_yx;
    let injective = !(ok_xy && !xy.h.is_zero());
    println!("surjective: {surjective}, injective: {injective}");
    verdict(ok_x && ok_yx && ok_xy && hom && surjective && !injective, "nonhopf-quadrant")
}

pub fn nonhopf_eigen() -> Result<(), CliError> {
    let data = build_figure1();
    let eigen = verify_eigen(&data.l, &data.lambda, &data.w)?;
    let irrational = no_nonzero_rational_on_segment(&data.w)?;
    let k = kernel_witness(&data)?;
    let control = strip_witness(&data, 1, rat(1, 10))?;
    let strs = |v: &[mvforge_core::QuadExt]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let rows: Vec<Vec<String>> = data.l.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let holds = eigen && irrational && k.holds() && !control.holds();
    let out = json!({
        "L": rows,
        "lambda": data.lambda.to_string(),
        "w": strs(data.w.endpoint()),
        "Lw": strs(&data.l.apply_quad(data.w.endpoint())?),
        "T": {
            "coordinate": k.coordinate,
            "threshold": k.threshold.to_string(),
            "region": format!("x{} > {}", k.coordinate, k.threshold),
        },
        "certificate": {
            "eigen_verified": eigen,
            "no_nonzero_rational_point": irrational,
            "restriction_nonzero": !k.restricted.is_zero(),
            "sigma_image_zero": k.sigma_image.is_zero(),
            "value_at_w": k.value_at_w.to_string(),
            "restriction": k.restricted.to_string(),
        },
        "negative_control": {
            "threshold": control.threshold.to_string(),
            "sigma_image_zero": control.sigma_image.is_zero(),
            "holds": control.holds(),
        },
        "holds": holds,
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("json value"));
    verdict(holds, "nonhopf-eigen")
}

pub fn chang_germ() -> Result<(), CliError> {
    let c = Chang;
    let mut ok = true;
    for k in 0..4u32 {
        for e in [ChangElement::infinitesimal(k), ChangElement::co_infinitesimal(k)] {
            let g = chang_to_germ(&e);
            println!("{e} <-> germ(value {}, slope {})", g.value(), g.slope());
        }
    }
    for (src, expect) in [("x1", ChangElement::infinitesimal(1)), ("~(x1 (+) x1)", ChangElement::co_infinitesimal(2))] {
        let f = from_term(&parse_term(src, 1)?, 1)?;
        let g = germ_at_zero_1d(&f)?;
        let hit = g == chang_to_germ(&expect);
        ok &= hit;
        println!("germ at 0 of {src} = {expect}: {hit}");
    }
    let a = ChangElement::infinitesimal(2);
    let b = ChangElement::co_infinitesimal(3);
    println!("{a} (+) {b} = {}", c.oplus(&a, &b));
    let iso = chang_iso_check(10);
    println!("isomorphism on |k| <= 10: {iso}");
    verdict(ok && iso, "chang-germ")
}

pub fn shift() -> Result<(), CliError> {
    let c = shift_kernel_demo()?;
    println!("t = {}", c.term);
    println!("t[x2 := x1] = {}", c.substituted);
    println!("t != 0: {}", !c.function.is_zero());
    println!("t[x2 := x1] = 0: {}", c.substituted_function.is_zero());
    println!("kernel nontrivial: {}", c.holds());
    verdict(c.holds(), "shift")
}
