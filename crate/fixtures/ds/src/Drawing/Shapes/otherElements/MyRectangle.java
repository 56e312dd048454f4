package Drawing.Shapes.otherElements;

import java.awt.Color;
import java.awt.Graphics;

import Drawing.Shapes.coreElements.MyShape;

// a rectangle bounded by the two corner points; the rectangle fills the box
// between them, so dragging the second point resizes the rectangle
public class MyRectangle extends MyShape {
    // no-argument constructor: a empty rectangle at the origin
    public MyRectangle() {
        super();
    }

    // constructor with input values
    public MyRectangle(int x1, int y1, int x2, int y2, Color shapeColor) {
        super(x1, y1, x2, y2, shapeColor);
    }

    // render a rectangle inside the bounding box of the two points
    public void draw(Graphics g) {
        int left = Math.min(this.X1, this.X2);
        int top = Math.min(this.Y1, this.Y2);
        int width = Math.abs(this.X1 - this.X2);
        int height = Math.abs(this.Y1 - this.Y2);
        g.setColor(getColor());
        g.drawRect(left, top, width, height);
    }
}
