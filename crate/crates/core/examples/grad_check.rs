//! Analytic against central-difference gradients on random small networks.

use lagan::nn::gradcheck::toy_gradient_survey;

fn main() -> lagan::Result<()> {
    for (i, (g, logit)) in toy_gradient_survey(10, 7)?.iter().enumerate() {
        println!(
            "net {i}: {} params, param err {:.2e}, input err {:.2e}, logit input err {:.2e}",
            g.params_checked, g.max_param_error, g.max_input_error, logit
        );
    }
    Ok(())
}
