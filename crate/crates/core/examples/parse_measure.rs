//! The measure mini-language used by `measlp --measure`.

use measure_lp::cli::parse_measure;
use measure_lp::norms::star_norm;
use measure_lp::ExponentPair;

fn main() {
    let one = ExponentPair::one();
    for src in [
        "delta(0.5)",
        "atoms[(0, 0.5), (1, 0, -0.5)]",
        "sum[2*gauss(0, 0.5), delta(3)]",
        "restrict(box(-1, 1), 0, 0.5)",
        "sum[cantor, -1*delta(0)]",
        "gauss(0, -1)",
        "sum[delta(0),\n    wobble(1)]",
    ] {
        match parse_measure(src).and_then(|m| star_norm(&m, one)) {
            Ok(r) => println!("{:<34} ‖μ‖₁* = {:.9}", src.replace('\n', " "), r.value),
            Err(e) => println!("{:<34} {e}", src.replace('\n', " ")),
        }
    }
}
