# Empty __init__.py file for weyl package
