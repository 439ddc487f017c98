# Empty __init__.py file for poincare package
