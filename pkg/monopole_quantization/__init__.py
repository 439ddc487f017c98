# Empty __init__.py file for monopole_quantization package
