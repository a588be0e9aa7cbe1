use mvforge_core::exactnum::parse_rat;
use mvforge_core::fsb::{
    prime_ideal_count, primitive_quotient, vertex_for_fraction, BratteliDiagram, PrimitiveQuotientDescriptor, Rho,
    Theta, MAX_DEPTH,
};
use mvforge_core::mcnaughton::{cube, denominator_census, from_term, parse_term, range_of_zmap};
use mvforge_core::{finitemv, McNFunction, QuadExt, RatPoint, Rational, ZMapFn};

use crate::error::{usage, CliError};

fn approx_of(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn function(arity: usize, expr: &str) -> Result<McNFunction, CliError> {
    let t = parse_term(expr, arity)?;
    Ok(from_term(&t, arity)?)
}

pub fn term_eval(arity: usize, expr: &str, point: &str, approx: bool) -> Result<(), CliError> {
    let t = parse_term(expr, arity)?;
    let p = RatPoint::parse(point)?;
    if p.dim() != arity {
        return Err(usage(format!("point has {} coordinates, expected {arity}", p.dim())));
    }
    if !p.in_unit_cube() {
        return Err(usage(format!("point {p} is outside [0,1]^{arity}")));
    }
    let v = t.eval_rational(p.coords())?;
    if approx {
        println!("{v}\t~{:.12}", approx_of(&v));
    } else {
        println!("{v}");
    }
    Ok(())
}

pub fn term_eq(arity: usize, e1: &str, e2: &str) -> Result<(), CliError> {
    let f = function(arity, e1)?;
    let g = function(arity, e2)?;
    println!("{}", f.equal(&g)?);
    Ok(())
}

pub fn census(arity: usize, max_den: u64, zmap: Option<&str>) -> Result<(), CliError> {
    if arity == 0 {
        return Err(usage("arity must be at least 1"));
    }
    match zmap {
        None => {
            let k = cube(arity)?;
            println!("b\tN_b");
            for b in 1..=max_den {
                println!("{b}\t{}", denominator_census(&k, b));
            }
        }
        Some(src) => {
            let comps = src.split(';').map(|e| function(arity, e.trim())).collect::<Result<Vec<_>, _>>()?;
            let g = ZMapFn::new(comps)?;
            let range = range_of_zmap(&g)?;
            let target = cube(g.target_dim())?;
            println!("b\tcube\trange");
            for b in 1..=max_den {
                println!("{b}\t{}\t{}", denominator_census(&target, b), denominator_census(&range, b));
            }
        }
    }
    Ok(())
}

fn depth_cap() -> Result<usize, CliError> {
    match std::env::var("MVFORGE_MAX_DEPTH") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("MVFORGE_MAX_DEPTH={v:?} is not a number"))),
        Err(_) => Ok(MAX_DEPTH),
    }
}

pub fn fsb(depth: usize, dot: bool, json: bool) -> Result<(), CliError> {
    let cap = depth_cap()?;
    if depth > cap {
        return Err(usage(format!("depth {depth} exceeds the cap {cap} (set MVFORGE_MAX_DEPTH to raise it)")));
    }
    let d = BratteliDiagram::build_with_cap(depth, cap)?;
    if dot {
        print!("{}", d.to_dot());
    } else if json {
        println!("{}", serde_json::to_string(&d.to_json()).map_err(|e| CliError::Math(e.to_string()))?);
    } else {
        for k in 0..=depth {
            let labels: Vec<String> = d.labels(k).iter().map(ToString::to_string).collect();
            println!("{k}: {}", labels.join(" "));
        }
    }
    Ok(())
}

pub fn separate(arity: usize, expr: &str) -> Result<(), CliError> {
    let f = function(arity, expr)?;
    let s = finitemv::separate(&f)?;
    let image = Rational::new(s.image.clone(), s.d.clone());
    println!("point: {}", s.point);
    println!("d: {}", s.d);
    println!("image: {} in L{}", image, &s.d + 1u32);
    Ok(())
}

fn parse_theta(src: &str) -> Result<QuadExt, CliError> {
    if src.trim().eq_ignore_ascii_case("golden") {
        return Ok(QuadExt::golden_conjugate());
    }
    Ok(QuadExt::parse(src)?)
}

pub fn quotient(rho: Option<&str>, theta: Option<&str>, approx: bool) -> Result<(), CliError> {
    let (descriptor, point) = match (rho, theta) {
        (Some(r), None) => {
            let r = parse_rat(r)?;
            let v = vertex_for_fraction(&r).map_err(usage)?;
            let d = primitive_quotient(&Rho::Rational(r.clone())).map_err(usage)?;
            println!("rho: {r}");
            println!("first depth: {}", v.depth);
            println!("row index: {}", v.index);
            println!("label: {}", v.label);
            (d, approx_of(&r))
        }
        (None, Some(t)) => {
            let t = parse_theta(t)?;
            let d = primitive_quotient(&Rho::Quad(t.clone())).map_err(usage)?;
            println!("theta: {t}");
            (d, t.to_f64())
        }
        _ => return Err(usage("give exactly one of --rho and --theta")),
    };
    match &descriptor {
        PrimitiveQuotientDescriptor::EffrosShen(Theta::Quad(t)) => {
            println!("quotient: Effros-Shen algebra, dimension group Z + Z*({t}) with unit 1");
        }
        PrimitiveQuotientDescriptor::FiniteDim(q) => println!("quotient: {q}x{q} matrices, dimension group (Z, {q})"),
        other => println!("quotient: {other}"),
    }
    println!("descriptor: {descriptor}");
    println!("prime ideals: {}", prime_ideal_count(&descriptor));
    if approx {
        println!("approx: {point:.12}");
    }
    Ok(())
}
