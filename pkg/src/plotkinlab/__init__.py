"""Recursive Plotkin codes and hidden-codeword soft-decision decoders."""
