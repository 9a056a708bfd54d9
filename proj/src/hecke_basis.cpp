// temporary placeholders while the core math is validated
