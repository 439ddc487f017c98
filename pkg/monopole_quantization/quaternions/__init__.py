# Empty __init__.py file for quaternions package
