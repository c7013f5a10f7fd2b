//! `‖sin(πx)/(πx)‖_s`, the closed-form upper bound `(2s'/π)^{1/s}`, and
//! `(1/π)∫|sin t/t|^s dt ≤ √(2/s)`.

use measure_lp::inequalities::sinc_constant;

fn main() -> measure_lp::Result<()> {
    println!("{:>4} {:>12} {:>12} {:>12} {:>12}", "s", "‖sinc‖_s", "bound", "∫|sinc|^s", "√(2/s)");
    for s in [1.5, 2.0, 3.0, 4.0, 8.0, 16.0, f64::INFINITY] {
        let c = sinc_constant(s)?;
        let ball = c.ball_bound.map_or("-".to_string(), |b| format!("{b:.9}"));
        println!("{s:>4} {:>12.9} {:>12.9} {:>12.9} {ball:>12}", c.numeric, c.paper_bound, c.ball_integral);
    }
    Ok(())
}
