//! Builds L_k(d), checks the Jacobi identity and powerfulness, and writes the
//! structure constants of p^2 L_k(d) to a JSON file.
//!
//!     cargo run --example construct_family -- 5 7

use padic_uniform::cli::show;
use padic_uniform::family::{build_family, family_adjoint, FamilyParams};
use padic_uniform::io::{load_algebra, save_algebra};
use padic_uniform::padic::PAdicContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k: usize = args.first().map_or(Ok(5), |s| s.parse())?;
    let ctx = PAdicContext::new(5, 24)?;
    let d = ctx.parse(args.get(1).map_or("7", String::as_str))?;
    let params = FamilyParams::new(k, d)?;

    let alg = build_family(&params);
    println!("L_{k}(d) over Z_5, basis {:?}", alg.names());
    for (i, j, v) in alg.nonzero_brackets() {
        let coords: Vec<String> = v.coords().iter().map(show).collect();
        println!("  [{}, {}] = ({})", alg.names()[i], alg.names()[j], coords.join(", "));
    }
    let (det, tr) = family_adjoint(&params)?.det_trace()?;
    println!("ad x on the derived algebra: trace {}, determinant {}", show(&tr), show(&det));
    println!("jacobi passes: {}", alg.jacobi_check().passed());
    println!("L powerful: {}, p^2 L powerful: {}", alg.is_powerful(), alg.scale(2).is_powerful());

    let path = std::env::temp_dir().join(format!("family_{k}.json"));
    save_algebra(&path, &alg.scale(2))?;
    let back = load_algebra(&path)?;
    println!("wrote {} ({} nonzero brackets)", path.display(), back.nonzero_brackets().len());
    Ok(())
}
