//! Campbell-Hausdorff coefficients: the Dynkin form through low degree, the
//! collected metabelian table and the truncation certificate.

use padic_uniform::bch::{cached_metabelian, cached_series, truncation_degree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let series = cached_series(4);
    for t in &series.terms {
        println!("degree {}: {:>6} [{}]", t.degree, t.coefficient.to_string(), t.word);
    }

    let table = cached_metabelian(8);
    println!("metabelian C[a][b] for a + b <= 3:");
    for a in 0..=3 {
        let row: Vec<String> = (0..=3 - a).map(|b| table.coefficient(a, b).to_string()).collect();
        println!("  a = {a}: {}", row.join("  "));
    }

    for p in [2, 3, 5] {
        let cert = truncation_degree(p, 26, 2)?;
        println!("p = {p}: degree {} suffices for 26 digits on p^2-scaled inputs", cert.degree);
    }
    Ok(())
}
